"""
Weighted quadratic sums imitating the Dirichlet and Fejer kernels, and the kernels themselves.

Both weighted sums are normalized to equal 1 at integer x. They are diagnostics:
the construction itself only uses the unweighted sums.
"""
from collections import defaultdict
from typing import Callable, Union

import mpmath
import numpy as np

from arith.rational_angle import RationalAngle, check_precision, DEFAULT_PRECISION
from expsum.quadratic_sums import FLOAT_PRECISION
from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)


def _weighted_quadratic_sum(
    x: RationalAngle,
    M: int,
    weights: Callable[[np.ndarray], np.ndarray],
    exact_weight: Callable[[int], int],
    precision: int
) -> Union[complex, mpmath.mpc]:
    """sum_{k<=M} w_k e(k^2 x) / sum w_k with integer weights exact_weight(k)"""
    check_precision(precision)
    q, p = x.q, x.p

    if precision <= FLOAT_PRECISION:
        k = np.arange(1, M + 1, dtype=np.int64)
        w = weights(k)
        residues = ((k % q) * (k % q) % q) * p % q
        total = np.sum(w * np.exp(2j * np.pi * residues / q))
        return complex(total / np.sum(w))

    # Group the exact integer weights by residue, then one exponential per residue
    grouped = defaultdict(int)
    norm = 0
    for k in range(1, M + 1):
        w = exact_weight(k)
        grouped[(k * k * p) % q] += w
        norm += w
    if norm == 0:
        raise DomainError("weights sum to zero")
    with mpmath.workprec(precision + 20):
        total = mpmath.mpc(0)
        for residue in sorted(grouped):
            turn = mpmath.mpf(2 * residue) / q
            total += grouped[residue] * mpmath.mpc(mpmath.cospi(turn), mpmath.sinpi(turn))
        value = total / norm
    with mpmath.workprec(precision):
        return +value


def dirichlet_weighted_sum(x: RationalAngle, M: int, precision: int = DEFAULT_PRECISION):
    """
    (1/M') sum_{k=1..M} 2k e(k^2 x) with M' = M(M+1).

    Args:
        x: Rational point
        M: Number of terms (>= 1)
        precision: Bits; 53 selects numpy

    Returns:
        Complex value equal to 1 at x = 0
    """
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    return _weighted_quadratic_sum(
        x, M,
        weights=lambda k: 2.0 * k,
        exact_weight=lambda k: 2 * k,
        precision=precision
    )


def fejer_weighted_sum(x: RationalAngle, M: int, precision: int = DEFAULT_PRECISION):
    """
    (1/M'') sum_{k=1..M} k (1 - k^2/M^2) e(k^2 x), M'' the sum of the weights.

    Args:
        x: Rational point
        M: Number of terms (>= 2; M = 1 makes every weight zero)
        precision: Bits; 53 selects numpy

    Returns:
        Complex value equal to 1 at x = 0
    """
    if M <= 1:
        raise DomainError(f"Fejer weights need M >= 2, got {M}")
    M_sq = M * M
    # k (M^2 - k^2) is the weight scaled by M^2, which cancels in the ratio
    return _weighted_quadratic_sum(
        x, M,
        weights=lambda k: k.astype(np.float64) * (M_sq - k.astype(np.float64) ** 2),
        exact_weight=lambda k: k * (M_sq - k * k),
        precision=precision
    )


def dirichlet_kernel(x: float, M: int) -> float:
    """Normalized Dirichlet kernel (1/(2M+1)) sum_{|k|<=M} e(kx)"""
    if M < 0:
        raise DomainError("M must be nonnegative")
    k = np.arange(1, M + 1)
    return float((1.0 + 2.0 * np.sum(np.cos(2 * np.pi * k * float(x)))) / (2 * M + 1))


def fejer_kernel(x: float, M: int) -> float:
    """Normalized Fejer kernel (1/M) sum_{|k|<=M} (1 - |k|/M) e(kx), equal to 1 at integers"""
    if M < 1:
        raise DomainError("M must be positive")
    k = np.arange(1, M + 1)
    return float((1.0 + 2.0 * np.sum((1.0 - k / M) * np.cos(2 * np.pi * k * float(x)))) / M)
