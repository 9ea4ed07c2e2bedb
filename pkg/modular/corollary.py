"""
Density bound for functions vanishing on squares.

If T = delta + sum a_d cos(2 pi d x) is nonnegative at every alpha/n, has T(0) = 1
and square frequencies d < n/2, then g with g(0) = delta and g(+-d) = a_d/2 is
positive definite with g^(0) = 1. For positive definite f vanishing on the squares,

    delta f(0) = f . g = (1/n) sum_k f^(k) g^(-k) >= f^(0) / n,

so rho(f) <= delta.
"""
from datetime import datetime
from math import ceil
from typing import Any, Dict, Iterable, Optional

import numpy as np
import pandas as pd

from construct.polynomial import SparseCosinePolynomial, is_perfect_square
from modular.modular_function import ModularFunction, autocorrelation, density, is_positive_definite
from modular.squares import SquareSet, squares_mod, max_squarefree_set
from oracle.extremal import ExtremalProblem, solve_extremal, FREE
from oracle.simplex import OPTIMAL
from utils.errors import DomainError, SolverError
from utils.logger import setup_logger, LogContext

logger = setup_logger(__name__)

PARSEVAL_TOLERANCE = 1e-12
INEQUALITY_TOLERANCE = 1e-8


def build_g(poly: SparseCosinePolynomial, n: int) -> ModularFunction:
    """
    g(0) = a0, g(+-d) = a_d / 2 on Z/nZ.

    Raises:
        DomainError: a frequency is not a square below n/2
    """
    values = np.zeros(n)
    values[0] = poly.a0
    for d, a in poly.coeffs.items():
        if not is_perfect_square(d) or 2 * d >= n:
            raise DomainError(f"frequency {d} is not a square below n/2 = {n / 2}")
        values[d % n] += a / 2
        values[(-d) % n] += a / 2
    return ModularFunction(n, values)


def threshold_polynomial(n: int) -> SparseCosinePolynomial:
    """
    Smallest-a0 polynomial over squares below n/2 that is nonnegative at every alpha/n.

    The LP grid is a multiple of n, so every point alpha/n is a constraint.
    """
    spectrum = tuple(k * k for k in range(1, n) if 2 * k * k < n)
    if not spectrum:
        return SparseCosinePolynomial(a0=1.0, coeffs={})
    # G/16 is a multiple of n above 8 max(d), so the coarse LP rows already bound the objective
    G = 16 * n * ceil(8 * spectrum[-1] / n)
    solution = solve_extremal(ExtremalProblem(n=spectrum[-1], sign_mode=FREE, G=G, spectrum=spectrum))
    if solution.status != OPTIMAL:
        raise SolverError(f"threshold LP for n={n} ended with status {solution.status}")
    return solution.polynomial()


def corollary_check(f: ModularFunction, poly: SparseCosinePolynomial,
                    squares: Optional[SquareSet] = None) -> Dict[str, Any]:
    """
    Evaluate both sides of delta f(0) = f . g >= f^(0)/n for f vanishing on the squares.

    Returns:
        Verdict dict; 'skipped' with a reason when f does not vanish on the squares
    """
    n = f.n
    squares = squares if squares is not None else squares_mod(n)
    verdict: Dict[str, Any] = {'n': n, 'delta': float(poly.a0)}
    if f.is_zero() or not is_positive_definite(f):
        verdict.update(status='skipped', reason='f is zero or not positive definite')
        return verdict
    if not f.vanishes_on(squares.members):
        verdict.update(status='skipped', reason='f does not vanish on the squares')
        return verdict

    g = build_g(poly, n)
    direct = f.dot(g)
    parseval = f.parseval_dot(g)
    scale = max(1.0, n * f.scale * g.scale)
    parseval_error = abs(direct - parseval)
    rho = density(f)
    lhs = poly.a0 * f.values[0].real
    rhs = f.transform[0].real / n

    parseval_ok = parseval_error <= PARSEVAL_TOLERANCE * scale
    chain_ok = lhs >= rhs - INEQUALITY_TOLERANCE * scale
    bound_ok = rho <= poly.a0 + INEQUALITY_TOLERANCE
    verdict.update(
        status='PASS' if parseval_ok and chain_ok and bound_ok else 'FAIL',
        rho=rho,
        delta_f0=float(lhs),
        f_dot_g=float(direct.real),
        f_hat0_over_n=float(rhs),
        parseval_error=float(parseval_error),
        g_positive_definite=is_positive_definite(g),
        g_hat0=float(g.transform[0].real)
    )
    if verdict['status'] == 'FAIL':
        logger.warning(f"Corollary check failed at n={n}: rho={rho}, delta={poly.a0}")
    return verdict


def density_sweep(count: int = 500, n_max: int = 64, seed: int = 0, tolerance: float = 1e-10) -> Dict[str, Any]:
    """rho(1_A * 1_{-A}) against |A|/n on random nonempty A"""
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = []
    for _ in range(count):
        n = int(rng.integers(2, n_max + 1))
        size = int(rng.integers(1, n + 1))
        members = rng.choice(n, size=size, replace=False)
        deviation = abs(density(autocorrelation(n, members)) - size / n)
        worst = max(worst, deviation)
        if deviation > tolerance:
            failures.append({'n': n, 'size': size, 'deviation': deviation})
    return {
        'status': 'PASS' if not failures else 'FAIL',
        'count': count,
        'max_deviation': worst,
        'failures': pd.DataFrame(failures, columns=['n', 'size', 'deviation']),
        'generation_time': datetime.now().isoformat()
    }


def corollary_table(n_values: Iterable[int], budget: int = 2000, seed: int = 0) -> pd.DataFrame:
    """
    Per modulus: square count, largest square-difference-free set found, LP threshold
    delta and the corollary verdict on the witness.
    """
    rows = []
    with LogContext(logger, "Modular corollary table"):
        for n in n_values:
            squares = squares_mod(n)
            best = max_squarefree_set(n, budget=budget, seed=seed)
            poly = threshold_polynomial(n)
            verdict = corollary_check(autocorrelation(n, best.witness), poly, squares)
            rows.append({
                'n': n,
                'square_count': len(squares),
                'max_squarefree_size': best.size,
                'optimal': best.optimal,
                'density': best.size / n,
                'lp_delta': float(poly.a0),
                'corollary_status': verdict['status'],
                'parseval_error': verdict.get('parseval_error')
            })
    return pd.DataFrame(rows)
