"""
Empirical calibration of the envelope constant c1 against exact sums at every coprime p/q
"""
from datetime import datetime
from math import log, sqrt
from typing import Any, Dict, Iterable, Optional

import numpy as np
import pandas as pd

from arith.rational_angle import reduce
from expsum.leading_terms import vartheta
from expsum.quadratic_sums import (
    QuadraticSumTable,
    partial_sum,
    naive_partial_sum,
    complete_gauss_sums,
    FLOAT_PRECISION,
)
from utils.logger import setup_logger, LogContext

logger = setup_logger(__name__)

DEFAULT_M_VALUES = (100, 1000, 10000)
DEFAULT_SAFETY_FACTOR = 1.25


def weyl_scale(q: int, M: int) -> float:
    """sqrt(log q)/sqrt(M) + sqrt(q log q)/M, the q- and M-dependent part of the envelope"""
    log_q = log(q) if q > 1 else 0.0
    return sqrt(log_q) / sqrt(M) + sqrt(q * log_q) / M


def weyl_ratio_table(q_max: int, M_values: Iterable[int] = DEFAULT_M_VALUES) -> pd.DataFrame:
    """
    Worst ratio ||S(p/q,1,M)| - vartheta_1(q)| / weyl_scale(q, M) over coprime p, per (q, M).

    q = 1 is skipped: S = vartheta = 1 there and the scale vanishes.

    Returns:
        DataFrame with columns q, M, max_ratio, worst_p, deviation
    """
    rows = []
    M_values = list(M_values)
    table = QuadraticSumTable()

    with LogContext(logger, f"Weyl ratio sweep q<={q_max}, M in {M_values}"):
        for q in range(2, q_max + 1):
            numerators = np.arange(q)
            coprime = np.gcd(numerators, q) == 1
            leading = vartheta(1, q).value
            for M in M_values:
                sums = table.partial_sums(q, M)
                deviation = np.abs(np.abs(sums[coprime]) - leading)
                worst = int(np.argmax(deviation))
                max_dev = float(deviation[worst])
                rows.append({
                    'q': q,
                    'M': M,
                    'max_ratio': max_dev / weyl_scale(q, M),
                    'worst_p': int(numerators[coprime][worst]),
                    'deviation': max_dev
                })
            # Every q is visited once; keep memory flat
            table.clear()

    return pd.DataFrame(rows, columns=['q', 'M', 'max_ratio', 'worst_p', 'deviation'])


def calibrate_c1(
    q_max: int = 2000,
    M_values: Iterable[int] = DEFAULT_M_VALUES,
    safety_factor: float = DEFAULT_SAFETY_FACTOR,
    ratio_table: Optional[pd.DataFrame] = None
) -> Dict[str, Any]:
    """
    Measure c1 as the largest observed ratio times a safety factor.

    Returns:
        Dictionary with c1, max_ratio, the (p, q, M) where it occurs and the sweep table
    """
    if ratio_table is None:
        ratio_table = weyl_ratio_table(q_max, M_values)
    worst = ratio_table.loc[ratio_table['max_ratio'].idxmax()]
    max_ratio = float(worst['max_ratio'])
    c1 = max_ratio * safety_factor

    logger.info(f"Calibrated c1 = {c1:.6f} (max ratio {max_ratio:.6f} at p/q={int(worst['worst_p'])}/{int(worst['q'])}, M={int(worst['M'])})")

    return {
        'c1': c1,
        'max_ratio': max_ratio,
        'safety_factor': safety_factor,
        'worst_q': int(worst['q']),
        'worst_p': int(worst['worst_p']),
        'worst_M': int(worst['M']),
        'q_max': q_max,
        'M_values': [int(m) for m in sorted(ratio_table['M'].unique())],
        'table': ratio_table,
        'generation_time': datetime.now().isoformat()
    }


def check_weyl_envelope(
    c1: float,
    q_max: int = 2000,
    M_values: Iterable[int] = DEFAULT_M_VALUES,
    ratio_table: Optional[pd.DataFrame] = None
) -> Dict[str, Any]:
    """
    Verify ||S(p/q,1,M)| - vartheta_1(q)| <= c1 * weyl_scale(q, M) over the sweep.

    Returns:
        Report with status PASS/FAIL and the violating (q, M) rows
    """
    if ratio_table is None:
        ratio_table = weyl_ratio_table(q_max, M_values)
    violations = ratio_table[ratio_table['max_ratio'] > c1]
    status = 'PASS' if violations.empty else 'FAIL'
    if status == 'FAIL':
        logger.warning(f"Weyl envelope with c1={c1} violated at {len(violations)} (q, M) pairs")

    return {
        'status': status,
        'c1': c1,
        'checked_pairs': len(ratio_table),
        'max_ratio': float(ratio_table['max_ratio'].max()),
        'violations': violations.reset_index(drop=True)
    }


def gauss_identity_sweep(q_max: int = 500, L_values: Iterable[int] = (1, 2, 3, 4, 6, 12),
                         tolerance: float = 1e-9) -> Dict[str, Any]:
    """
    Compare |complete Gauss sum| with vartheta_L(q) at every coprime p/q, q <= q_max.

    Returns:
        Report with status, checked count, worst deviation and violating (q, L) rows
    """
    L_values = list(L_values)
    rows = []
    checked = 0
    worst = 0.0
    with LogContext(logger, f"Gauss identity sweep q<={q_max}, L in {L_values}"):
        for q in range(1, q_max + 1):
            coprime = np.gcd(np.arange(q), q) == 1
            for L in L_values:
                moduli = np.abs(complete_gauss_sums(q, L)[coprime])
                deviation = float(np.max(np.abs(moduli - vartheta(L, q).value)))
                checked += int(coprime.sum())
                worst = max(worst, deviation)
                if deviation > tolerance:
                    rows.append({'q': q, 'L': L, 'deviation': deviation})

    violations = pd.DataFrame(rows, columns=['q', 'L', 'deviation'])
    status = 'PASS' if violations.empty else 'FAIL'
    if status == 'FAIL':
        logger.warning(f"Gauss identity violated at {len(violations)} (q, L) pairs")
    return {
        'status': status,
        'checked': checked,
        'max_deviation': worst,
        'tolerance': tolerance,
        'violations': violations,
        'generation_time': datetime.now().isoformat()
    }


def evaluator_equivalence_sweep(count: int = 200, q_max: int = 1000, L_max: int = 10, M_max: int = 100000,
                                seed: int = 0, tolerance: float = 1e-9) -> Dict[str, Any]:
    """
    Period-decomposition partial sums against direct summation at random (p/q, L, M).

    Returns:
        Report with status, max deviation and the sampled cases as a DataFrame
    """
    rng = np.random.default_rng(seed)
    table = QuadraticSumTable()
    rows = []
    for _ in range(count):
        q = int(rng.integers(1, q_max + 1))
        x = reduce(int(rng.integers(0, q)), q)
        L = int(rng.integers(1, L_max + 1))
        M = int(rng.integers(1, M_max + 1))
        fast = partial_sum(x, L, M, FLOAT_PRECISION, table=table)
        slow = naive_partial_sum(x, L, M)
        rows.append({'x': str(x), 'L': L, 'M': M, 'deviation': abs(fast - slow)})

    cases = pd.DataFrame(rows, columns=['x', 'L', 'M', 'deviation'])
    max_deviation = float(cases['deviation'].max()) if count else 0.0
    status = 'PASS' if max_deviation <= tolerance else 'FAIL'
    if status == 'FAIL':
        logger.warning(f"Partial sums disagree with direct summation by {max_deviation:.3e}")
    return {
        'status': status,
        'count': count,
        'seed': seed,
        'max_deviation': max_deviation,
        'tolerance': tolerance,
        'cases': cases,
        'generation_time': datetime.now().isoformat()
    }
