"""
Continued-fraction convergents and Dirichlet approximation of rational points
"""
from dataclasses import dataclass
from fractions import Fraction
from math import log
from typing import Iterator, List, Tuple

from arith.bigint import int_to_decimal
from arith.rational_angle import RationalAngle
from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class DirichletApprox:
    """p/q with 1 <= q <= R and eps = |x - p/q| <= 1/(qR)"""
    p: int
    q: int
    eps: Fraction
    R: int

    def satisfies_bound(self) -> bool:
        return 1 <= self.q <= self.R and self.eps * self.q * self.R <= 1

    def to_dict(self) -> dict:
        return {
            'p': int_to_decimal(self.p),
            'q': int_to_decimal(self.q),
            'eps': f"{int_to_decimal(self.eps.numerator)}/{int_to_decimal(self.eps.denominator)}",
            'eps_float': float(self.eps),
            'log_R': log(self.R)
        }


def continued_fraction(x: Fraction) -> List[int]:
    """Partial quotients [a0; a1, a2, ...] of a nonnegative rational"""
    p, q = x.numerator, x.denominator
    quotients = []
    while q:
        a, r = divmod(p, q)
        quotients.append(a)
        p, q = q, r
    return quotients


def convergents(x: Fraction) -> Iterator[Tuple[int, int]]:
    """Yield the convergents (p_n, q_n) of x; the last one is x itself"""
    p_prev, p_curr = 0, 1
    q_prev, q_curr = 1, 0
    for a in continued_fraction(x):
        p_prev, p_curr = p_curr, a * p_curr + p_prev
        q_prev, q_curr = q_curr, a * q_curr + q_prev
        yield p_curr, q_curr


def dirichlet_approx(x: RationalAngle, R: int) -> DirichletApprox:
    """
    Last convergent of x with denominator <= R.

    Returns x itself when its denominator is at most R. Otherwise the next
    convergent has denominator > R, which gives |x - p/q| < 1/(q R).

    Args:
        x: Rational point
        R: Denominator bound (>= 1)

    Returns:
        DirichletApprox with the exact error eps
    """
    if R < 1:
        raise DomainError(f"R must be at least 1, got {R}")
    value = x.as_fraction()
    if x.q <= R:
        return DirichletApprox(x.p, x.q, Fraction(0), R)

    best_p, best_q = 0, 1
    for p, q in convergents(value):
        if q > R:
            break
        best_p, best_q = p, q
    eps = abs(value - Fraction(best_p, best_q))
    return DirichletApprox(best_p, best_q, eps, R)
