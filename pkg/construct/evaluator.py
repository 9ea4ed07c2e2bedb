"""
Exact-rational evaluation of T on points and grids, grid minima and the -delta bound check
"""
from datetime import datetime
from typing import Any, Dict, Optional, Tuple, Union

import mpmath
import numpy as np
import pandas as pd
import sympy

from arith.rational_angle import RationalAngle, reduce, frac_quadratic, check_precision, DEFAULT_PRECISION
from construct.construction import ConstructionSchedule
from construct.polynomial import expand_coefficients
from expsum.quadratic_sums import QuadraticSumTable, partial_sum, FLOAT_PRECISION
from utils.errors import DomainError, ResourceLimitError
from utils.logger import setup_logger, LogContext

logger = setup_logger(__name__)

DEFAULT_WORST_COUNT = 10
# Largest expansion attempted for the derivative certificate
CERTIFY_MAX_TERMS = 200_000


class ConstructionEvaluator:
    """
    Evaluates T for one schedule with a private table of complete and prefix sums.

    Every S(x, L_j, M_k) reduces to S(a/q, 1, M_k) with a/q = L_j^2 x mod 1, so the
    cost depends on the reduced denominators only, never on the size of M_k.
    """

    def __init__(self, cons: ConstructionSchedule, table: Optional[QuadraticSumTable] = None):
        self.cons = cons
        self.table = table if table is not None else QuadraticSumTable()
        self._weights = cons.weights()
        self.grid_seconds = None

    def evaluate(self, x: RationalAngle, precision: int = FLOAT_PRECISION) -> Union[float, mpmath.mpf]:
        """T(x) on the float path (precision 53) or in mpmath"""
        check_precision(precision)
        cons = self.cons
        if precision <= FLOAT_PRECISION:
            terms = []
            for w, L in zip(self._weights, cons.L_seq):
                y = frac_quadratic(1, L, x)
                sums = [self.table.partial_sums(y.q, M)[y.p].real for M in cons.M_seq]
                terms.append(w * np.sum(sums) / cons.m)
            return float(np.sum(terms))

        weights = cons.weights_mp(precision)
        with mpmath.workprec(precision + 20):
            total = mpmath.mpf(0)
            for w, L in zip(weights, cons.L_seq):
                inner = mpmath.fsum(mpmath.re(partial_sum(x, L, M, precision + 20)) for M in cons.M_seq)
                total += w * inner / cons.m
        with mpmath.workprec(precision):
            return +total

    def grid_values(self, G: int) -> np.ndarray:
        """
        T(i/G) for i = 0..G-1 on the float path.

        For each chain member the numerators (L_j^2 i) mod G are grouped by their
        reduced denominator q | G; each group reads one vector of partial sums.
        """
        if G < 2:
            raise DomainError(f"grid size must be at least 2, got {G}")
        cons = self.cons
        i = np.arange(G, dtype=np.int64)
        values = np.zeros(G)
        divisors = [int(q) for q in sympy.divisors(G)]

        with LogContext(logger, f"Grid evaluation G={G}, {cons.l + 1}x{cons.m} sums") as timing:
            for w, L in zip(self._weights, cons.L_seq):
                numerators = (pow(L, 2, G) * i) % G
                g = np.gcd(numerators, G)
                denominators = G // g
                reduced = numerators // g
                chain_values = np.zeros(G)
                for q in divisors:
                    mask = denominators == q
                    if not mask.any():
                        continue
                    a = reduced[mask]
                    acc = np.zeros(a.shape[0])
                    for M in cons.M_seq:
                        acc += self.table.partial_sums(q, M)[a].real
                    chain_values[mask] = acc
                values += w * chain_values / cons.m
        self.grid_seconds = timing.duration
        return values


def eval_T(x: RationalAngle, cons: ConstructionSchedule, precision: int = DEFAULT_PRECISION,
           evaluator: Optional[ConstructionEvaluator] = None):
    """
    T(x) = (1/(m Lambda)) sum_{j=0..l} sum_{k=1..m} lambda^j Re S(x, L_j, M_k).

    Args:
        x: Rational point
        cons: Construction schedule
        precision: 53 for float64, more bits for mpmath
        evaluator: Reusable evaluator holding the sum cache

    Returns:
        float or mpmath.mpf
    """
    evaluator = evaluator if evaluator is not None else ConstructionEvaluator(cons)
    return evaluator.evaluate(x, precision)


def naive_eval_T(x: RationalAngle, cons: ConstructionSchedule) -> float:
    """Direct double loop over every k <= M_k; toy schedules only"""
    if cons.term_count() > 10 ** 7:
        raise ResourceLimitError("naive evaluation", cons.term_count(), 10 ** 7)
    total = 0.0
    for w, L in zip(cons.weights(), cons.L_seq):
        for M in cons.M_seq:
            k = np.arange(1, M + 1, dtype=np.int64) % x.q
            residues = ((k * k) % x.q) * ((L * L * x.p) % x.q) % x.q
            total += w * np.cos(2 * np.pi * residues / x.q).sum() / M
    return float(total / cons.m)


def grid_min(cons: ConstructionSchedule, G: int, precision: int = DEFAULT_PRECISION,
             evaluator: Optional[ConstructionEvaluator] = None) -> Tuple[float, RationalAngle]:
    """
    Minimum of T over x = i/G.

    The scan runs on float64; the minimizer is re-evaluated at the requested precision.

    Returns:
        (minimum value, argmin as a reduced angle)
    """
    evaluator = evaluator if evaluator is not None else ConstructionEvaluator(cons)
    values = evaluator.grid_values(G)
    index = int(np.argmin(values))
    argmin = reduce(index, G)
    value = evaluator.evaluate(argmin, precision)
    return float(value), argmin


def _derivative_certificate(cons: ConstructionSchedule, G: int, grid_minimum: float,
                            max_terms: int = CERTIFY_MAX_TERMS) -> Dict[str, Any]:
    """Interval bound min_grid - B/(2G) with B = 2 pi sum d a_d, when the expansion has at most max_terms terms"""
    if cons.term_count() > max_terms:
        return {'tier': 'grid_only', 'reason': f'{cons.term_count()} terms exceed the expansion cap {max_terms}'}
    poly = expand_coefficients(cons, max_terms=max_terms)
    B = poly.derivative_bound()
    lower = grid_minimum - B / (2 * G)
    return {
        'tier': 'derivative',
        'derivative_bound': B,
        'certified_lower_bound': lower,
        'certified': cons.delta is not None and lower >= -cons.delta
    }


def verify_bound(cons: ConstructionSchedule, G: int, precision: int = DEFAULT_PRECISION,
                 worst_count: int = DEFAULT_WORST_COUNT, include_values: bool = False,
                 max_terms: int = CERTIFY_MAX_TERMS) -> Dict[str, Any]:
    """
    Compare the grid minimum of T with -delta.

    Args:
        cons: Schedule with delta set
        G: Grid size (>= 2)
        precision: Precision of the re-evaluated minimizer
        worst_count: Number of worst grid points reported
        include_values: Attach the full grid as a DataFrame (i, x, T)
        max_terms: Expansion cap of the derivative certificate

    Returns:
        Report with status PASS/FAIL, margin, worst offenders and certification tier
    """
    if cons.delta is None:
        raise DomainError("verify_bound needs a schedule with delta")
    delta = cons.delta
    evaluator = ConstructionEvaluator(cons)
    values = evaluator.grid_values(G)

    order = np.argsort(values, kind='stable')[:worst_count]
    worst = pd.DataFrame({
        'i': order,
        'x': [str(reduce(int(i), G)) for i in order],
        'T': values[order]
    })

    index = int(order[0])
    argmin = reduce(index, G)
    minimum = float(evaluator.evaluate(argmin, precision))
    margin = minimum + delta
    status = 'PASS' if margin >= 0 else 'FAIL'
    if status == 'FAIL':
        logger.warning(f"{cons.label}: grid minimum {minimum:.6f} at x={argmin} is below -delta={-delta}")
    else:
        logger.info(f"{cons.label}: grid minimum {minimum:.6f} at x={argmin}, margin {margin:.6f}")

    summary = cons.summary()
    report = {
        'status': status,
        'label': cons.label,
        'delta': delta,
        'G': G,
        'precision': precision,
        'min_value': minimum,
        'argmin': str(argmin),
        'margin': margin,
        'value_at_zero': float(values[0]),
        'even_symmetry_error': float(np.max(np.abs(values[1:] - values[1:][::-1]))) if G > 2 else 0.0,
        'worst': worst,
        'log_n': summary['log_n'],
        'n_digits': summary['n_digits'],
        'm': cons.m,
        'm_at_most_9_over_delta': summary.get('m_at_most_9_over_delta'),
        'M_exponent_at_most_36_over_delta': summary.get('M_exponent_at_most_36_over_delta'),
        'certification': _derivative_certificate(cons, G, minimum, max_terms),
        'grid_seconds': evaluator.grid_seconds,
        'generation_time': datetime.now().isoformat()
    }
    if include_values:
        report['values'] = pd.DataFrame({
            'i': np.arange(G),
            'x': [f"{i}/{G}" for i in range(G)],
            'T': values
        })
    return report
