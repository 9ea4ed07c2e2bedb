"""
Degree growth of the construction: log log n against log(1/delta)
"""
from datetime import datetime
from math import log
from typing import Any, Dict, Iterable

import numpy as np
import pandas as pd

from construct.construction import build_construction
from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_DELTAS = (0.56, 0.5, 0.45, 0.4)
EXPECTED_SLOPE = 3.0
SLOPE_TOLERANCE = 0.6


def degree_table(deltas: Iterable[float] = DEFAULT_DELTAS) -> pd.DataFrame:
    """l, m, log L_max, log n and log log n for each delta"""
    rows = []
    for delta in deltas:
        cons = build_construction(delta)
        log_n = cons.log_degree()
        rows.append({
            'delta': delta,
            'l': cons.l,
            'm': cons.m,
            'log_L_max': log(cons.L_max),
            'log_n': log_n,
            'log_log_n': log(log_n),
            'log_inv_delta': log(1 / delta),
            # delta * (log n)^(1/3) stays bounded if delta = O((log n)^(-1/3))
            'delta_times_cuberoot_log_n': delta * log_n ** (1 / 3)
        })
    return pd.DataFrame(rows)


def exponent_law(deltas: Iterable[float] = DEFAULT_DELTAS,
                 expected: float = EXPECTED_SLOPE, tolerance: float = SLOPE_TOLERANCE) -> Dict[str, Any]:
    """
    Least-squares slope of log log n on log(1/delta).

    Returns:
        Report with slope, intercept, status (slope within expected +- tolerance) and the table
    """
    table = degree_table(deltas)
    if len(table) < 2:
        raise DomainError("at least two deltas are needed for a slope")
    slope, intercept = np.polyfit(table['log_inv_delta'], table['log_log_n'], 1)
    ok = abs(slope - expected) <= tolerance
    logger.info(f"Exponent law slope {slope:.3f} (expected {expected} +- {tolerance})")
    return {
        'status': 'PASS' if ok else 'FAIL',
        'slope': float(slope),
        'intercept': float(intercept),
        'expected': expected,
        'tolerance': tolerance,
        'table': table,
        'generation_time': datetime.now().isoformat()
    }
