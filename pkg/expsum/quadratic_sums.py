"""
Quadratic exponential sums S(x, L, M) = (1/M) sum_{k<=M} e(k^2 L^2 x) at rational points.

At x = a/q the map k -> e(k^2 a / q) has period q, so

    S = (1/M) * (floor(M/q) * q * C(a/q) + P_r(a/q)),   r = M mod q

where C is the normalized complete sum over one period and P_r the sum of
the first r terms. Both are computed for every numerator of a denominator
at once: with h the histogram of k^2 mod q, sum_k e(k^2 a/q) = sum_j h[j] e(aj/q),
which is one inverse FFT of h.
"""
from collections import Counter
from math import gcd
from typing import Dict, Tuple, Union

import mpmath
import numpy as np

from arith.rational_angle import RationalAngle, frac_quadratic, check_precision, DEFAULT_PRECISION
from utils.errors import DomainError, ResourceLimitError
from utils.logger import setup_logger

logger = setup_logger(__name__)

FLOAT_PRECISION = 53

# Largest period the float path materializes (two complex arrays of this length)
MAX_TABLE_PERIOD = 2 ** 24


def _square_residue_histogram(q: int, count: int, multiplier: int = 1) -> np.ndarray:
    """Histogram of (k^2 * multiplier) mod q for k = 1..count"""
    k = np.arange(1, count + 1, dtype=np.int64) % q
    residues = (k * k) % q
    multiplier %= q
    if multiplier != 1:
        residues = (residues * multiplier) % q
    return np.bincount(residues, minlength=q).astype(np.float64)


class QuadraticSumTable:
    """
    Cache of normalized quadratic sums keyed by reduced denominator.

    One table belongs to one task (an evaluator, a sweep); it is not shared
    between threads.
    """

    def __init__(self, max_period: int = MAX_TABLE_PERIOD):
        self.max_period = max_period
        self._complete: Dict[int, np.ndarray] = {}
        self._prefix: Dict[Tuple[int, int], np.ndarray] = {}

    def _check_period(self, q: int):
        if q < 1:
            raise DomainError(f"period must be positive, got {q}")
        if q > self.max_period:
            raise ResourceLimitError("quadratic sum table", q, self.max_period)

    def complete_sums(self, q: int) -> np.ndarray:
        """
        Normalized complete sums for every numerator.

        Returns:
            Array C with C[a] = (1/q) sum_{k=1..q} e(k^2 a / q), a = 0..q-1
        """
        cached = self._complete.get(q)
        if cached is not None:
            return cached
        self._check_period(q)
        histogram = _square_residue_histogram(q, q)
        # ifft(h)[a] = (1/q) sum_j h[j] e(+a j / q)
        sums = np.fft.ifft(histogram)
        self._complete[q] = sums
        return sums

    def prefix_sums(self, q: int, r: int) -> np.ndarray:
        """
        Unnormalized sums of the first r terms for every numerator.

        Returns:
            Array P with P[a] = sum_{k=1..r} e(k^2 a / q), 0 <= r < q
        """
        if r == 0:
            return np.zeros(q, dtype=np.complex128)
        key = (q, r)
        cached = self._prefix.get(key)
        if cached is not None:
            return cached
        self._check_period(q)
        histogram = _square_residue_histogram(q, r)
        sums = np.fft.ifft(histogram) * q
        self._prefix[key] = sums
        return sums

    def partial_sums(self, q: int, M: int) -> np.ndarray:
        """
        S(a/q, 1, M) for every numerator a = 0..q-1 via period decomposition.

        M may be an arbitrarily large integer.
        """
        if M < 1:
            raise DomainError(f"M must be at least 1, got {M}")
        r = M % q
        complete = self.complete_sums(q)
        if r == 0:
            return complete.copy()
        # (M - r)/M of the mass sits in complete periods
        full_weight = 1 - r / M
        prefix_weight = 1 / M
        return full_weight * complete + prefix_weight * self.prefix_sums(q, r)

    def clear(self):
        self._complete.clear()
        self._prefix.clear()

    def get_stats(self) -> dict:
        return {
            'complete_entries': len(self._complete),
            'prefix_entries': len(self._prefix),
            'complex_values': sum(v.size for v in self._complete.values())
            + sum(v.size for v in self._prefix.values())
        }


def _mp_residue_sum(residues: Counter, q: int, precision: int) -> mpmath.mpc:
    """sum over residues j with multiplicity c of c * e(j/q), at the given precision"""
    with mpmath.workprec(precision + 20):
        total = mpmath.mpc(0)
        for j in sorted(residues):
            turn = mpmath.mpf(2 * j) / q
            total += residues[j] * mpmath.mpc(mpmath.cospi(turn), mpmath.sinpi(turn))
    return total


def partial_sum(
    x: RationalAngle,
    L: int,
    M: int,
    precision: int = DEFAULT_PRECISION,
    table: QuadraticSumTable = None
) -> Union[complex, mpmath.mpc]:
    """
    S(x, L, M) = (1/M) sum_{k=1..M} e(k^2 L^2 x), exact period decomposition.

    Args:
        x: Rational evaluation point
        L: Dilation
        M: Number of terms (>= 1, any size)
        precision: 53 selects the float path, more bits the mpmath path
        table: Optional cache reused across calls (float path)

    Returns:
        complex (float path) or mpmath.mpc (high precision)
    """
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    check_precision(precision)

    # Period is the reduced denominator of L^2 x, not q itself
    y = frac_quadratic(1, L, x)
    q, a = y.q, y.p
    if q == 1:
        return 1.0 + 0.0j if precision <= FLOAT_PRECISION else mpmath.mpc(1)

    if precision <= FLOAT_PRECISION:
        table = table if table is not None else QuadraticSumTable()
        return complex(table.partial_sums(q, M)[a])

    r = M % q
    full_periods = M // q
    complete = Counter((k * k * a) % q for k in range(1, q + 1))
    prefix = Counter((k * k * a) % q for k in range(1, r + 1))
    with mpmath.workprec(precision + 20):
        value = (full_periods * _mp_residue_sum(complete, q, precision)
                 + _mp_residue_sum(prefix, q, precision)) / M
    with mpmath.workprec(precision):
        return +value


def naive_partial_sum(x: RationalAngle, L: int, M: int) -> complex:
    """Direct float summation over k = 1..M; reference for the period decomposition"""
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    multiplier = (L * L * x.p) % x.q
    k = np.arange(1, M + 1, dtype=np.int64) % x.q
    residues = ((k * k) % x.q) * multiplier % x.q
    return complex(np.exp(2j * np.pi * residues / x.q).sum() / M)


def complete_gauss_sum(p: int, q: int, L: int, precision: int = DEFAULT_PRECISION) -> Union[complex, mpmath.mpc]:
    """
    (1/q) sum_{k=1..q} e(k^2 L^2 p / q), summed over the full period q without reduction.

    Args:
        p: Numerator coprime to q
        q: Denominator (>= 1)
        L: Dilation
        precision: Bits; 53 selects numpy

    Returns:
        The normalized complete sum
    """
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    if gcd(p, q) != 1:
        raise DomainError(f"p={p} and q={q} are not coprime")
    check_precision(precision)

    multiplier = (L * L * p) % q
    if precision <= FLOAT_PRECISION:
        histogram = _square_residue_histogram(q, q, multiplier)
        phases = np.exp(2j * np.pi * np.arange(q) / q)
        return complex(histogram @ phases / q)

    residues = Counter((k * k * multiplier) % q for k in range(1, q + 1))
    with mpmath.workprec(precision + 20):
        value = _mp_residue_sum(residues, q, precision) / q
    with mpmath.workprec(precision):
        return +value


def complete_gauss_sums(q: int, L: int) -> np.ndarray:
    """
    complete_gauss_sum(p, q, L) for every p = 0..q-1 in one inverse FFT.

    Entries at p not coprime to q are returned too; callers mask them.
    """
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    histogram = _square_residue_histogram(q, q, L * L)
    return np.fft.ifft(histogram)


def squared_modulus_double_sum(p: int, q: int, M: int) -> float:
    """
    sum_{k,j=1..M} e((k^2 - j^2) p / q), which equals M^2 |S(p/q, 1, M)|^2.

    Quadratic in M; small M only.
    """
    k = np.arange(1, M + 1, dtype=np.int64)
    phases = np.exp(2j * np.pi * ((k * k * p) % q) / q)
    return float(np.real(np.sum(np.outer(phases, np.conj(phases)))))
