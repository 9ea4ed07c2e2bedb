"""
Extremal problem over square spectra: the smallest free coefficient a0 of a normed
cosine polynomial with frequencies in {1, 4, 9, ...} <= n that is nonnegative on a grid.

The LP is solved in reduced form. With a0 = 1 - sum a_d eliminated,

    maximize   sum_d a_d
    subject to sum_d a_d (1 - cos(2 pi d x_i)) <= 1   for grid points x_i,

so the slack basis is feasible from the start. Constraints are generated by
cutting planes: solve on a coarse subset, add the most violated grid points,
repeat until no grid point is violated.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime
from math import isqrt
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from construct.construction import ConstructionSchedule
from construct.polynomial import DEFAULT_MAX_TERMS, SparseCosinePolynomial, expand_coefficients
from oracle.simplex import solve_lp, OPTIMAL, ITERATION_LIMIT, UNBOUNDED
from utils.errors import DomainError, SolverError
from utils.logger import setup_logger, LogContext

logger = setup_logger(__name__)

FREE = 'free'
NONNEGATIVE = 'nonnegative'
SIGN_MODES = (FREE, NONNEGATIVE)

GRID_FACTOR = 128
COARSE_STRIDE = 16
MIN_GRID_FACTOR = 4
VIOLATION_TOLERANCE = 1e-9
POINTS_PER_ROUND = 64
MAX_ROUNDS = 200


def square_spectrum(n: int) -> Tuple[int, ...]:
    """{1, 4, 9, ...} intersected with [1, n]"""
    return tuple(k * k for k in range(1, isqrt(max(n, 0)) + 1))


def default_grid(n: int) -> int:
    return GRID_FACTOR * max(n, 1)


@dataclass(frozen=True)
class ExtremalProblem:
    """Spectrum, sign mode and constraint grid x_i = i/G, i = 0..G/2"""
    n: int
    sign_mode: str = NONNEGATIVE
    G: Optional[int] = None
    spectrum: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n must be nonnegative, got {self.n}")
        if self.sign_mode not in SIGN_MODES:
            raise DomainError(f"sign_mode must be one of {SIGN_MODES}, got {self.sign_mode!r}")
        if self.spectrum is None:
            object.__setattr__(self, 'spectrum', square_spectrum(self.n))
        if self.G is None:
            object.__setattr__(self, 'G', default_grid(self.n))
        if self.G < MIN_GRID_FACTOR * max(self.n, 1):
            raise DomainError(f"grid G={self.G} is coarser than {MIN_GRID_FACTOR}n")


@dataclass
class ExtremalSolution:
    a0: float
    coefficients: Dict[int, float]
    status: str
    certificate_margin: Optional[float] = None
    iterations: int = 0
    rounds: int = 0
    duality_gap: Optional[float] = None
    max_violation: float = 0.0
    active_constraints: int = 0

    def polynomial(self) -> SparseCosinePolynomial:
        coeffs = {d: a for d, a in self.coefficients.items() if a != 0.0}
        return SparseCosinePolynomial(a0=self.a0, coeffs=coeffs)


def _gap_matrix(spectrum: Tuple[int, ...], indices: np.ndarray, G: int) -> np.ndarray:
    """Rows 1 - cos(2 pi d i / G) with d*i reduced mod G in integers"""
    d = np.array(spectrum, dtype=np.int64) % G
    phases = np.outer(indices.astype(np.int64), d) % G
    return 1.0 - np.cos(2 * np.pi * phases / G)


def solve_extremal(prob: ExtremalProblem, max_rounds: int = MAX_ROUNDS) -> ExtremalSolution:
    """
    Minimize a0 subject to T(x_i) >= 0 on the constraint grid and T(0) = 1.

    Args:
        prob: Problem definition
        max_rounds: Cutting-plane round cap

    Returns:
        ExtremalSolution; status is optimal or the simplex failure status
    """
    spectrum = prob.spectrum
    if not spectrum:
        return ExtremalSolution(a0=1.0, coefficients={}, status=OPTIMAL, certificate_margin=None)

    G = prob.G
    points = np.arange(G // 2 + 1, dtype=np.int64)
    grid_matrix = _gap_matrix(spectrum, points, G)
    active = set(int(i) for i in points[::COARSE_STRIDE])
    active.add(G // 2)
    free = prob.sign_mode == FREE
    size = len(spectrum)

    iterations = 0
    with LogContext(logger, f"Extremal LP n={prob.n} ({prob.sign_mode}, G={G})"):
        for rounds in range(1, max_rounds + 1):
            rows = np.array(sorted(active), dtype=np.int64)
            A = grid_matrix[rows]
            if free:
                # a_d = u_d - v_d
                A = np.hstack([A, -A])
                c = np.concatenate([np.ones(size), -np.ones(size)])
            else:
                c = np.ones(size)
            result = solve_lp(c, A, np.ones(len(rows)))
            iterations += result.iterations
            if result.status == UNBOUNDED and len(active) < points.size:
                # Coarse set too sparse to bound the objective; fall back to every grid point
                active.update(int(i) for i in points)
                continue
            if result.status != OPTIMAL:
                logger.warning(f"Simplex stopped with status {result.status} at n={prob.n}")
                return ExtremalSolution(a0=float('nan'), coefficients={}, status=result.status,
                                        iterations=iterations, rounds=rounds)

            coeffs = result.x[:size] - result.x[size:] if free else result.x
            slack = 1.0 - grid_matrix @ coeffs
            violated = np.nonzero(slack < -VIOLATION_TOLERANCE)[0]
            fresh = np.array([i for i in violated if int(points[i]) not in active], dtype=np.int64)
            if fresh.size == 0:
                # Remaining violations sit on active rows: tableau roundoff. Every row is
                # homogeneous in a, so dividing by 1 + v restores feasibility everywhere.
                overshoot = float(max(0.0, -slack.min()))
                if overshoot > 0.0:
                    logger.debug(f"Rescaling by 1 + {overshoot:.2e} to absorb roundoff on active rows")
                    coeffs = coeffs / (1.0 + overshoot)
                    slack = 1.0 - grid_matrix @ coeffs
                return ExtremalSolution(
                    a0=1.0 - float(np.sum(coeffs)),
                    coefficients={d: float(a) for d, a in zip(spectrum, coeffs)},
                    status=OPTIMAL,
                    iterations=iterations,
                    rounds=rounds,
                    duality_gap=result.duality_gap,
                    max_violation=float(max(0.0, -slack.min())),
                    active_constraints=len(rows)
                )
            worst = fresh[np.argsort(slack[fresh], kind='stable')[:POINTS_PER_ROUND]]
            active.update(int(points[i]) for i in worst)
            logger.debug(f"Round {rounds}: {violated.size} violated points, active set {len(active)}")

    logger.warning(f"Cutting planes did not converge in {max_rounds} rounds for n={prob.n}")
    return ExtremalSolution(a0=float('nan'), coefficients={}, status=ITERATION_LIMIT,
                            iterations=iterations, rounds=max_rounds)


def certify_nonneg(poly: SparseCosinePolynomial, G: int) -> Tuple[bool, float]:
    """
    Certify T >= 0 on all of [0, 1] from its values on x = i/G.

    Every x lies within 1/(2G) of a grid point, and |T'| <= B = 2 pi sum d |a_d|.

    Returns:
        (certified, margin) with margin = grid minimum - B/(2G)
    """
    if G < 1:
        raise DomainError(f"grid size must be positive, got {G}")
    values = poly.grid_values(G)
    margin = float(values.min()) - poly.derivative_bound() / (2 * G)
    return margin >= 0, margin


def _solve_row(n: int, modes: List[str], G: int, certify_factor: int) -> Dict[str, Any]:
    row = {'n': n, 'gamma_free': None, 'gamma_nonneg': None, 'iterations': 0,
           'certified_margin': None, 'max_duality_gap': 0.0, 'status': OPTIMAL}
    for mode in modes:
        solution = solve_extremal(ExtremalProblem(n=n, sign_mode=mode, G=G))
        row['gamma_free' if mode == FREE else 'gamma_nonneg'] = solution.a0
        row['iterations'] += solution.iterations
        if solution.status != OPTIMAL:
            row['status'] = solution.status
            continue
        if solution.duality_gap is not None:
            row['max_duality_gap'] = max(row['max_duality_gap'], solution.duality_gap)
        if mode == NONNEGATIVE:
            _, row['certified_margin'] = certify_nonneg(solution.polynomial(), certify_factor * G)
    return row


def gamma_table(n_list: Iterable[int], modes: Iterable[str] = SIGN_MODES,
                G: Optional[int] = None, certify_factor: int = 4, max_workers: int = 1) -> pd.DataFrame:
    """
    gamma(n) and gamma+(n) on a common grid G = 128 max(n), so feasible sets are nested.

    Args:
        n_list: Spectrum caps
        modes: Sign modes to solve
        G: Common grid size
        certify_factor: The nonnegative optimum is certified on a grid this many times finer
        max_workers: Problems solved concurrently

    Returns:
        DataFrame with n, gamma_free, gamma_nonneg, iterations, certified_margin
        plus max_duality_gap and status
    """
    n_list = list(n_list)
    columns = ['n', 'gamma_free', 'gamma_nonneg', 'iterations', 'certified_margin', 'max_duality_gap', 'status']
    if not n_list:
        return pd.DataFrame(columns=columns)
    modes = list(modes)
    for mode in modes:
        if mode not in SIGN_MODES:
            raise DomainError(f"unknown sign mode {mode!r}")
    G = G if G is not None else default_grid(max(n_list))

    with LogContext(logger, f"Gamma table for {len(n_list)} spectra (G={G})"):
        if max_workers > 1:
            with ThreadPoolExecutor(max_workers=max_workers) as pool:
                rows = list(pool.map(lambda n: _solve_row(n, modes, G, certify_factor), n_list))
        else:
            rows = [_solve_row(n, modes, G, certify_factor) for n in n_list]
    return pd.DataFrame(rows, columns=columns)


def gamma_sweep_report(n_list: Iterable[int], G: Optional[int] = None, max_workers: int = 1) -> Dict[str, Any]:
    """
    Shape checks of the gamma table: n = 1 gives 1/2, values are nonincreasing
    in n, free <= nonnegative, duality gaps stay below 1e-8.
    """
    n_list = sorted(set(n_list))
    G = G if G is not None else default_grid(max(n_list) if n_list else 1)
    table = gamma_table(n_list, G=G, max_workers=max_workers)
    problems = []
    if len(table) and (table['status'] != OPTIMAL).any():
        problems.append("some problems did not reach an optimum")
    max_gap = float(table['max_duality_gap'].max()) if len(table) else 0.0
    if max_gap > 1e-8:
        problems.append(f"duality gap {max_gap:.2e}")
    free = table['gamma_free'].to_numpy(dtype=float)
    nonneg = table['gamma_nonneg'].to_numpy(dtype=float)
    for column, values in (('gamma_free', free), ('gamma_nonneg', nonneg)):
        if np.any(np.diff(values) > 1e-8):
            problems.append(f"{column} increases with n")
    if np.any(free > nonneg + 1e-8):
        problems.append("free mode above nonnegative mode")
    if 1 in n_list:
        anchor = float(table.loc[table['n'] == 1, 'gamma_nonneg'].iloc[0])
        if abs(anchor - 0.5) > 1e-6:
            problems.append(f"n=1 optimum {anchor} != 1/2")
    if problems:
        logger.warning(f"Gamma sweep problems: {problems}")
    return {
        'status': 'PASS' if not problems else 'FAIL',
        'G': G,
        'problems': problems,
        'max_duality_gap': max_gap,
        'table': table,
        'generation_time': datetime.now().isoformat()
    }


def compare_with_construction(cons: ConstructionSchedule, cap: Optional[int] = None,
                              G: Optional[int] = None,
                              max_terms: int = DEFAULT_MAX_TERMS) -> Dict[str, Any]:
    """
    LP optimum over the support of an expandable construction versus the
    construction's own shifted free coefficient.

    The shift used is the larger of delta and minus the construction's minimum on
    the LP grid. (T + shift) / (T(0) + shift) is then feasible for the same LP, so
    the LP value can only be smaller. T(0) is below 1 when the cap truncates the support.

    Expansions with more than max_terms terms raise ResourceLimitError.

    Returns:
        Report with lp_a0, construction_a0, status
    """
    poly = expand_coefficients(cons, cap=cap, max_terms=max_terms)
    support = poly.support
    if not support:
        return {'status': 'PASS', 'lp_a0': 1.0, 'construction_a0': 1.0, 'support': [],
                'generation_time': datetime.now().isoformat()}

    G = G if G is not None else default_grid(max(support))
    grid_minimum = float(poly.grid_values(G).min())
    delta = cons.delta if cons.delta is not None else 0.0
    shift = max(delta, -grid_minimum, 0.0)
    # a capped expansion drops mass, so T(0) = sum a_d can fall below 1
    mass = poly.value_at_zero()
    construction_a0 = shift / (mass + shift)

    solution = solve_extremal(ExtremalProblem(n=max(support), sign_mode=NONNEGATIVE, G=G, spectrum=support))
    if solution.status != OPTIMAL:
        raise SolverError(f"LP over the construction support ended with status {solution.status}")
    ok = solution.a0 <= construction_a0 + VIOLATION_TOLERANCE
    if not ok:
        logger.warning(f"LP value {solution.a0} exceeds construction value {construction_a0}")
    return {
        'status': 'PASS' if ok else 'FAIL',
        'lp_a0': solution.a0,
        'construction_a0': construction_a0,
        'delta_over_one_plus_delta': delta / (1 + delta),
        'grid_minimum': grid_minimum,
        'shift': shift,
        'value_at_zero': mass,
        'G': G,
        'support': list(support),
        'lp_coefficients': solution.coefficients,
        'generation_time': datetime.now().isoformat()
    }
