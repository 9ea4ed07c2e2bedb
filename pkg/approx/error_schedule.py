"""
Error schedule: the moduli M_k = L^(2(m+k)), the approximations (p_k, q_k, eps_k)
chosen around the pivot index and the averaged envelope (1/m) sum_k E_k.

The schedule is diagnostic. Evaluating the polynomial never needs it.
"""
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from math import ceil, floor, log
from typing import Any, Dict, List

import pandas as pd

from approx.dirichlet import DirichletApprox, dirichlet_approx
from arith.bigint import int_to_decimal
from arith.rational_angle import RationalAngle
from expsum.leading_terms import error_envelope
from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

MAX_SCHEDULE_DELTA = 0.56
# Every index except the two around the pivot stays within delta/4
ALLOWED_EXCEPTIONS = 2
MAX_M_EXPONENT_FACTOR = 36


def _exact_delta(delta: float) -> Fraction:
    """delta as the short rational it was typed as (0.4 -> 2/5)"""
    return Fraction(delta).limit_denominator(10 ** 9)


def choose_m(delta: float) -> int:
    """Smallest integer m with 8/delta <= m <= 9/delta"""
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    exact = _exact_delta(delta)
    m = ceil(8 / exact)
    if m > floor(9 / exact):
        raise DomainError(f"no integer m in [8/delta, 9/delta] for delta={delta}")
    return m


@dataclass
class ScheduleRow:
    k: int
    M: int
    approx: DirichletApprox
    envelope: float
    weyl: float
    tail: float
    drift: float


@dataclass
class ErrorSchedule:
    """Per-k schedule for one point x and one dilation L"""
    x: RationalAngle
    L: int
    delta: float
    c1: float
    m: int
    pivot: int
    rows: List[ScheduleRow] = field(default_factory=list)

    @property
    def average(self) -> float:
        return sum(row.envelope for row in self.rows) / self.m

    @property
    def exceptional_indices(self) -> List[int]:
        """Indices k with E_k > delta/4"""
        return [row.k for row in self.rows if row.envelope > self.delta / 4]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{
            'k': row.k,
            'log_M': log(row.M),
            'p': int_to_decimal(row.approx.p),
            'q': int_to_decimal(row.approx.q),
            'eps': float(row.approx.eps),
            'E': row.envelope,
            'weyl': row.weyl,
            'tail': row.tail,
            'drift': row.drift,
            'within_quarter': row.envelope <= self.delta / 4
        } for row in self.rows])

    def to_dict(self) -> Dict[str, Any]:
        return {
            'x': str(self.x),
            'L': int_to_decimal(self.L),
            'delta': self.delta,
            'c1': self.c1,
            'm': self.m,
            'pivot': self.pivot,
            'rows': [{
                'k': row.k,
                'M_exponent': 2 * (self.m + row.k),
                'log_M': log(row.M),
                'approx': row.approx.to_dict(),
                'E': row.envelope
            } for row in self.rows]
        }


def build_error_schedule(x: RationalAngle, L: int, delta: float, c1: float) -> ErrorSchedule:
    """
    Select (M_k, p_k/q_k, eps_k) for k = 1..m.

    R_k = L^(4(m+k)) and p'_k/q'_k is the Dirichlet approximation of x for R_k.
    The pivot n is the largest k with q'_k <= L^(4m) (0 if none); indices
    k <= n use the n-th approximation, indices k > n the (n+1)-th.

    Args:
        x: Evaluation point
        L: Dilation (>= 2)
        delta: Target in (0, 0.56]
        c1: Envelope constant

    Returns:
        ErrorSchedule with one row per k
    """
    if L < 2:
        raise DomainError(f"L must be at least 2, got {L}")
    if not 0 < delta <= MAX_SCHEDULE_DELTA:
        raise DomainError(f"delta must lie in (0, {MAX_SCHEDULE_DELTA}], got {delta}")

    m = choose_m(delta)
    pivot_bound = L ** (4 * m)
    moduli = [L ** (2 * (m + k)) for k in range(1, m + 1)]
    raw = [dirichlet_approx(x, L ** (4 * (m + k))) for k in range(1, m + 1)]

    pivot = 0
    for k, approx in enumerate(raw, start=1):
        if approx.q <= pivot_bound:
            pivot = k

    schedule = ErrorSchedule(x=x, L=L, delta=delta, c1=c1, m=m, pivot=pivot)
    for k in range(1, m + 1):
        source = raw[pivot - 1] if k <= pivot else raw[min(pivot, m - 1)]
        eps = x.distance_to(source.p, source.q)
        approx = DirichletApprox(source.p, source.q, eps, source.R)
        env = error_envelope(L, moduli[k - 1], source.q, eps, c1)
        schedule.rows.append(ScheduleRow(k, moduli[k - 1], approx, env.value, env.weyl, env.tail, env.drift))

    logger.debug(f"Schedule x={x}: m={m}, pivot={pivot}, average E={schedule.average:.3e}")
    return schedule


def schedule_report(schedule: ErrorSchedule) -> Dict[str, Any]:
    """
    Contract and hypothesis checks of a schedule.

    The hypotheses log q_k <= L^(1/2) and 3 L^(-1/2) <= delta/4 are evaluated
    in log space and reported, not assumed.
    """
    log_L = log(schedule.L)
    delta = schedule.delta
    m = schedule.m
    exact = _exact_delta(delta)

    log_q_ok = all(
        row.approx.q == 1 or log(log(row.approx.q)) <= 0.5 * log_L
        for row in schedule.rows
    )
    small_L_term_ok = log(3) - 0.5 * log_L <= log(delta / 4)
    exceptions = schedule.exceptional_indices
    average = schedule.average
    contract = average <= delta / 2

    if not contract:
        logger.warning(f"Average envelope {average:.4f} exceeds delta/2 = {delta / 2} at x={schedule.x}")

    return {
        'x': str(schedule.x),
        'delta': delta,
        'm': m,
        'm_in_range': 8 / exact <= m <= 9 / exact,
        'M_exponent_ok': 4 * m <= MAX_M_EXPONENT_FACTOR / exact,
        'pivot': schedule.pivot,
        'average_E': average,
        'contract_holds': contract,
        'exceptional_indices': exceptions,
        'exceptions_within_allowance': len(exceptions) <= ALLOWED_EXCEPTIONS,
        'hypothesis_log_q': log_q_ok,
        'hypothesis_small_L_term': small_L_term_ok,
        'status': 'PASS' if contract else 'FAIL',
        'rows': schedule.to_frame(),
        'generation_time': datetime.now().isoformat()
    }
