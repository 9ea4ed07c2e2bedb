"""
Sparse cosine polynomials a0 + sum_d a_d cos(2 pi d x) and the coefficient expansion of T
"""
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, pi
from typing import Any, Dict, Optional, Tuple, Union

import mpmath
import numpy as np

from arith.bigint import decimal_to_int, int_to_decimal
from construct.construction import ConstructionSchedule
from utils.errors import DomainError, ResourceLimitError
from utils.logger import setup_logger, LogContext

logger = setup_logger(__name__)

DEFAULT_MAX_TERMS = 2_000_000
EXPANSION_PRECISION = 128


def is_perfect_square(d: int) -> bool:
    if d < 0:
        return False
    root = isqrt(d)
    return root * root == d


@dataclass
class SparseCosinePolynomial:
    """
    T(x) = a0 + sum_d a_d cos(2 pi d x) over positive frequencies d.

    degree is the declared degree; it equals the largest key for a complete
    expansion and may exceed it for a capped one.
    """
    a0: float
    coeffs: Dict[int, float] = field(default_factory=dict)
    degree: Optional[int] = None

    def __post_init__(self):
        if self.degree is None:
            self.degree = max(self.coeffs) if self.coeffs else 0

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def value_at_zero(self) -> float:
        return float(self.a0 + sum(self.coeffs.values()))

    def has_square_support(self) -> bool:
        return all(is_perfect_square(d) for d in self.coeffs)

    def min_coefficient(self) -> float:
        return min(self.coeffs.values()) if self.coeffs else 0.0

    def derivative_bound(self) -> float:
        """B = 2 pi sum_d d |a_d|, a Lipschitz constant of T"""
        return 2 * pi * float(sum(d * abs(a) for d, a in self.coeffs.items()))

    def evaluate(self, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        x = np.asarray(x, dtype=np.float64)
        if not self.coeffs:
            return float(self.a0) if x.ndim == 0 else np.full(x.shape, float(self.a0))
        d = np.array(self.support, dtype=np.float64)
        a = np.array([self.coeffs[k] for k in self.support])
        values = self.a0 + np.cos(2 * np.pi * np.multiply.outer(x, d)) @ a
        return float(values) if x.ndim == 0 else values

    def grid_values(self, G: int) -> np.ndarray:
        """
        T(i/G) for i = 0..G-1 with the phase d*i reduced mod G in integers.
        """
        if G < 1:
            raise DomainError(f"grid size must be positive, got {G}")
        i = np.arange(G, dtype=np.int64)
        values = np.full(G, float(self.a0))
        for d in self.support:
            phase = ((d % G) * i) % G
            values += self.coeffs[d] * np.cos(2 * np.pi * phase / G)
        return values

    def shifted(self, shift: float, scale: float) -> 'SparseCosinePolynomial':
        """(T + shift) / scale"""
        return SparseCosinePolynomial(
            a0=(self.a0 + shift) / scale,
            coeffs={d: a / scale for d, a in self.coeffs.items()},
            degree=self.degree
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'a0': self.a0,
            'degree': int_to_decimal(self.degree),
            'coefficients': [[int_to_decimal(d), a] for d, a in sorted(self.coeffs.items())]
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SparseCosinePolynomial':
        coeffs = {decimal_to_int(d): float(a) for d, a in data.get('coefficients', [])}
        degree = data.get('degree')
        return cls(
            a0=float(data['a0']),
            coeffs=coeffs,
            degree=decimal_to_int(degree) if degree is not None else None
        )


def _expansion_term_count(cons: ConstructionSchedule, cap: Optional[int]) -> int:
    if cap is None:
        return cons.term_count()
    root = isqrt(cap)
    return sum(min(M, root // L) for L in cons.L_seq for M in cons.M_seq)


def expand_coefficients(
    cons: ConstructionSchedule,
    cap: Optional[int] = None,
    max_terms: int = DEFAULT_MAX_TERMS,
    precision: int = EXPANSION_PRECISION
) -> SparseCosinePolynomial:
    """
    Unfold T into a0 + sum_d a_d cos(2 pi d x).

    The term (j, k') of modulus M_k contributes lambda^j / (m Lambda M_k) at
    d = (L_j k')^2; equal frequencies are summed in exact arithmetic
    (rationals plus a sqrt(2) part) and rounded once at the end.

    Args:
        cons: Schedule to expand
        cap: Only frequencies d <= cap are materialized
        max_terms: Resource cap on the number of (j, k') terms
        precision: Bits used for the final rounding

    Returns:
        SparseCosinePolynomial with a0 = 0 and declared degree M_max^2 L_max^2
    """
    terms = _expansion_term_count(cons, cap)
    if terms > max_terms:
        raise ResourceLimitError("coefficient expansion", terms, max_terms)

    rational = defaultdict(Fraction)
    radical = defaultdict(Fraction)
    root = isqrt(cap) if cap is not None else None

    with LogContext(logger, f"Expanding {terms} terms"):
        for j, L in enumerate(cons.L_seq):
            r_j, s_j = cons.exact_weight(j)
            for M in cons.M_seq:
                top = M if root is None else min(M, root // L)
                r_term = r_j / M
                s_term = s_j / M
                for k in range(1, top + 1):
                    d = (L * k) ** 2
                    if r_term:
                        rational[d] += r_term
                    if s_term:
                        radical[d] += s_term

        # Lambda = A + B sqrt(2)
        A = sum((cons.exact_weight(j)[0] for j in range(cons.l + 1)), Fraction(0))
        B = sum((cons.exact_weight(j)[1] for j in range(cons.l + 1)), Fraction(0))
        coeffs = {}
        with mpmath.workprec(precision):
            sqrt2 = mpmath.sqrt(2)
            norm = cons.m * (mpmath.mpf(A.numerator) / A.denominator + mpmath.mpf(B.numerator) / B.denominator * sqrt2)
            for d in sorted(set(rational) | set(radical)):
                r, s = rational.get(d, Fraction(0)), radical.get(d, Fraction(0))
                value = mpmath.mpf(r.numerator) / r.denominator + mpmath.mpf(s.numerator) / s.denominator * sqrt2
                coeffs[d] = float(value / norm)

    return SparseCosinePolynomial(a0=0.0, coeffs=coeffs, degree=cons.degree())


def shift_normalize(
    source: Union[SparseCosinePolynomial, ConstructionSchedule],
    delta: float,
    verified_min: Optional[float] = None,
    cap: Optional[int] = None
) -> SparseCosinePolynomial:
    """
    (T + delta) / (1 + delta): value 1 at zero and a0 = delta/(1 + delta) for raw T.

    Args:
        source: Raw polynomial, or a schedule expanded first
        delta: Shift; T >= -delta must hold
        verified_min: Observed minimum of T, checked against -delta when given
        cap: Expansion cap when source is a schedule

    Returns:
        Normalized nonnegative polynomial
    """
    if delta < 0:
        raise DomainError(f"delta must be nonnegative, got {delta}")
    if verified_min is not None and verified_min < -delta - 1e-12:
        raise DomainError(f"minimum {verified_min} is below -delta={-delta}; shifted polynomial would be negative")
    poly = expand_coefficients(source, cap=cap) if isinstance(source, ConstructionSchedule) else source
    return poly.shifted(delta, 1 + delta)
