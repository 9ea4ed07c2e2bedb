"""
Leading terms vartheta_L(q), tau_L(q) of averaged quadratic sums and the error envelope E_{L,M}(q, eps)
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, sqrt
from typing import Dict, Union

import mpmath

from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

DIVIDES = 'divides'
VANISHES = 'vanishes'
GENERIC = 'generic'

# Envelope is computed in mpmath so that M ~ L^(4m) neither overflows nor underflows
_ENVELOPE_PRECISION = 80


@dataclass(frozen=True)
class LeadingTerm:
    """
    Exact leading term at denominator q for dilation L^2.

    case is DIVIDES when q | L^2 (value 1), VANISHES when q/(q, L^2) = 2 mod 4
    (value 0), GENERIC otherwise (value +-r^(-1/2), r = q/(q, 2L^2)).
    """
    value: float
    case: str
    r: int


@dataclass(frozen=True)
class ErrorEnvelope:
    """min{c1 * (weyl + tail + drift), 2} with its three summands"""
    c1: float
    value: float
    weyl: float = 0.0
    tail: float = 0.0
    drift: float = 0.0

    @property
    def clamped(self) -> bool:
        return self.value >= 2.0


def _classify(L: int, q: int):
    if L < 1 or q < 1:
        raise DomainError(f"L and q must be positive, got L={L}, q={q}")
    # gcd(q, L^2) only depends on L^2 mod q, which keeps huge L cheap
    L_sq_mod = pow(L, 2, q)
    g = gcd(q, L_sq_mod)
    r = q // gcd(q, (2 * L_sq_mod) % q)
    if g == q:
        return DIVIDES, 1
    if (q // g) % 4 == 2:
        return VANISHES, r
    return GENERIC, r


def vartheta(L: int, q: int) -> LeadingTerm:
    """
    Magnitude of the leading term of |S(p/q, L, M)|.

    Args:
        L: Dilation (>= 1)
        q: Reduced denominator (>= 1)

    Returns:
        LeadingTerm with value 1, 0 or r^(-1/2)
    """
    case, r = _classify(L, q)
    if case == DIVIDES:
        return LeadingTerm(1.0, DIVIDES, r)
    if case == VANISHES:
        return LeadingTerm(0.0, VANISHES, r)
    return LeadingTerm(1.0 / sqrt(r), GENERIC, r)


def tau(L: int, q: int) -> LeadingTerm:
    """Signed lower-bound form of vartheta: the generic case is negated"""
    term = vartheta(L, q)
    if term.case == GENERIC:
        return LeadingTerm(-term.value, GENERIC, term.r)
    return term


def _to_mpf(value: Union[int, float, Fraction]) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def error_envelope(
    L: int,
    M: int,
    q: int,
    eps: Union[Fraction, float, int],
    c1: float
) -> ErrorEnvelope:
    """
    E_{L,M}(q, eps) = min{c1 * (sqrt(log q)/sqrt(M) + sqrt(q log q)/M + L^2 M^2 eps), 2}.

    log is the natural logarithm with log 1 = 0.

    Args:
        L: Dilation (>= 0)
        M: Sum length (>= 1)
        q: Denominator of the approximation (>= 1)
        eps: Distance |x - p/q| (>= 0), exact or float
        c1: Calibration constant (> 0)

    Returns:
        ErrorEnvelope with value in [0, 2]
    """
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    if L < 0 or eps < 0 or c1 <= 0:
        raise DomainError("L and eps must be nonnegative and c1 positive")

    with mpmath.workprec(_ENVELOPE_PRECISION):
        log_q = mpmath.log(q) if q > 1 else mpmath.mpf(0)
        M_mp = mpmath.mpf(M)
        weyl = mpmath.sqrt(log_q) / mpmath.sqrt(M_mp)
        tail = mpmath.sqrt(q * log_q) / M_mp
        drift = mpmath.mpf(L) ** 2 * M_mp ** 2 * _to_mpf(eps)
        total = c1 * (weyl + tail + drift)
        value = min(total, mpmath.mpf(2))
        return ErrorEnvelope(
            c1=float(c1),
            value=float(value),
            weyl=float(weyl),
            tail=float(tail),
            drift=float(min(drift, mpmath.mpf(10) ** 300))
        )


def leading_term_table(L: int, q_max: int) -> Dict[int, Dict[str, LeadingTerm]]:
    """vartheta and tau for q = 1..q_max"""
    return {q: {'vartheta': vartheta(L, q), 'tau': tau(L, q)} for q in range(1, q_max + 1)}
