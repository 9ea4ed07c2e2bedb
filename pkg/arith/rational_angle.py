"""
Exact points of the circle [0, 1) and the unit exponential e(x) = exp(2*pi*i*x)
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

import mpmath

from arith.bigint import decimal_to_int, int_to_decimal
from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_PRECISION = 128
MIN_PRECISION = 53


@dataclass(frozen=True, order=True)
class RationalAngle:
    """
    A reduced fraction p/q taken mod 1.

    Invariants: gcd(p, q) = 1, q >= 1, 0 <= p < q. Build instances with
    reduce() unless the fraction is already canonical.
    """
    p: int
    q: int

    def __post_init__(self):
        if self.q < 1 or not 0 <= self.p < self.q or gcd(self.p, self.q) != 1:
            raise DomainError(f"{self.p}/{self.q} is not a canonical angle, use reduce()")

    @property
    def is_zero(self) -> bool:
        return self.p == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __add__(self, other: 'RationalAngle') -> 'RationalAngle':
        return reduce(self.p * other.q + other.p * self.q, self.q * other.q)

    def __neg__(self) -> 'RationalAngle':
        return reduce(-self.p, self.q)

    def reflect(self) -> 'RationalAngle':
        """The point 1 - x (mod 1)"""
        return -self

    def distance_to(self, p: int, q: int) -> Fraction:
        """Exact |x - p/q| on the real line, x read in [0, 1)"""
        return abs(self.as_fraction() - Fraction(p, q))

    def __float__(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return f"{int_to_decimal(self.p)}/{int_to_decimal(self.q)}"


def reduce(p: int, q: int) -> RationalAngle:
    """
    Reduce p/q to its canonical angle in [0, 1).

    Args:
        p: Numerator (any integer)
        q: Denominator (nonzero)

    Returns:
        Coprime fraction with positive denominator, congruent to p/q mod 1
    """
    p, q = int(p), int(q)
    if q == 0:
        raise DomainError("zero denominator")
    if q < 0:
        p, q = -p, -q
    p %= q
    g = gcd(p, q)
    return RationalAngle(p // g, q // g)


def from_fraction(value: Union[Fraction, int]) -> RationalAngle:
    value = Fraction(value)
    return reduce(value.numerator, value.denominator)


def parse_angle(text: str) -> RationalAngle:
    """Parse 'p/q' or an integer string, e.g. from the command line"""
    text = text.strip()
    num, _, den = text.partition('/')
    try:
        return reduce(decimal_to_int(num), decimal_to_int(den) if den else 1)
    except ValueError as e:
        if isinstance(e, DomainError):
            raise
        raise DomainError(f"cannot parse angle {text!r}") from e


def rationalize(value: float, denominator: int) -> RationalAngle:
    """
    Round a real point to the nearest multiple of 1/denominator.

    Irrational inputs enter the exact path only through this call.
    """
    if denominator < 1:
        raise DomainError("rationalizing denominator must be positive")
    return reduce(round(Fraction(value) * denominator), denominator)


def frac_quadratic(k: int, L: int, x: RationalAngle) -> RationalAngle:
    """
    Fractional part of k^2 * L^2 * x, computed as ((k^2 L^2 p) mod q) / q.

    Args:
        k: Summation index
        L: Dilation
        x: Angle p/q

    Returns:
        The exact angle k^2 L^2 x mod 1
    """
    numerator = (pow(k, 2, x.q) * pow(L, 2, x.q) * x.p) % x.q
    return reduce(numerator, x.q)


def check_precision(precision: int) -> int:
    if precision < MIN_PRECISION:
        raise DomainError(f"precision must be at least {MIN_PRECISION} bits, got {precision}")
    return int(precision)


def exp_unit(x: RationalAngle, precision: int = DEFAULT_PRECISION) -> mpmath.mpc:
    """
    e(x) = exp(2*pi*i*x) at the given binary precision.

    Args:
        x: Exact angle
        precision: Working precision in bits (>= 53)

    Returns:
        mpmath complex within 2^(1-precision) of e(x)
    """
    check_precision(precision)
    with mpmath.workprec(precision + 10):
        # cospi/sinpi reduce the argument exactly, so quarter turns come out exact
        turn = mpmath.mpf(2 * x.p) / x.q
        value = mpmath.mpc(mpmath.cospi(turn), mpmath.sinpi(turn))
    with mpmath.workprec(precision):
        return +value
