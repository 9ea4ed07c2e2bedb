"""
Functions on Z/nZ, their discrete Fourier transform and the density rho(f)
"""
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

PD_RELATIVE_TOLERANCE = 1e-9


def dft_matrix(n: int, sign: int = -1) -> np.ndarray:
    """e(sign * k * alpha / n) with k * alpha reduced mod n in integers"""
    index = np.arange(n, dtype=np.int64)
    phases = np.outer(index, index) % n
    return np.exp(sign * 2j * np.pi * phases / n)


@dataclass
class ModularFunction:
    """
    f: Z/nZ -> C with forward transform f^(k) = sum_alpha f(alpha) e(-k alpha / n).

    The transform is computed by direct summation on first access and cached.
    """
    n: int
    values: np.ndarray
    _transform: Optional[np.ndarray] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if self.n < 1:
            raise DomainError(f"modulus must be positive, got {self.n}")
        if self.values.shape[0] != self.n:
            raise DomainError(f"expected {self.n} values, got {self.values.shape[0]}")

    @classmethod
    def from_transform(cls, n: int, transform) -> 'ModularFunction':
        """Inverse transform f(alpha) = (1/n) sum_k f^(k) e(k alpha / n)"""
        transform = np.asarray(transform, dtype=np.complex128)
        f = cls(n, dft_matrix(n, sign=1) @ transform / n)
        f._transform = transform.copy()
        return f

    @property
    def transform(self) -> np.ndarray:
        if self._transform is None:
            self._transform = dft_matrix(self.n) @ self.values
        return self._transform

    def __call__(self, alpha: int) -> complex:
        return complex(self.values[alpha % self.n])

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.values))) if self.n else 0.0

    def is_zero(self) -> bool:
        return self.scale == 0.0

    def roundtrip_error(self) -> float:
        back = dft_matrix(self.n, sign=1) @ self.transform / self.n
        return float(np.max(np.abs(back - self.values)))

    def vanishes_on(self, members: Iterable[int], tol: float = 1e-9) -> bool:
        members = [m % self.n for m in members]
        return not members or bool(np.all(np.abs(self.values[members]) <= tol * max(1.0, self.scale)))

    def dot(self, other: 'ModularFunction') -> complex:
        """f . g = sum_alpha f(alpha) g(alpha)"""
        _check_same_modulus(self, other)
        return complex(np.sum(self.values * other.values))

    def parseval_dot(self, other: 'ModularFunction') -> complex:
        """(1/n) sum_k f^(k) g^(-k), equal to dot() by Parseval"""
        _check_same_modulus(self, other)
        reflected = other.transform[(-np.arange(self.n)) % self.n]
        return complex(np.sum(self.transform * reflected) / self.n)


def _check_same_modulus(f: ModularFunction, g: ModularFunction):
    if f.n != g.n:
        raise DomainError(f"moduli differ: {f.n} and {g.n}")


def indicator(n: int, members: Iterable[int]) -> ModularFunction:
    values = np.zeros(n)
    for m in members:
        values[m % n] = 1.0
    return ModularFunction(n, values)


def autocorrelation(n: int, members: Iterable[int]) -> ModularFunction:
    """
    1_A * 1_{-A}(alpha) = |A intersect (A + alpha)|, the number of ways alpha is a difference in A.
    """
    members = sorted({m % n for m in members})
    values = np.zeros(n)
    for a in members:
        for b in members:
            values[(a - b) % n] += 1.0
    return ModularFunction(n, values)


def is_positive_definite(f: ModularFunction, tol: Optional[float] = None) -> bool:
    """
    Every Fourier coefficient real and nonnegative up to tol.

    The default tolerance is 1e-9 * n * max|f|.
    """
    if tol is None:
        tol = PD_RELATIVE_TOLERANCE * f.n * max(f.scale, 1e-300)
    transform = f.transform
    return bool(np.all(np.abs(transform.imag) <= tol) and np.all(transform.real >= -tol))


def density(f: ModularFunction) -> float:
    """
    rho(f) = f^(0) / (n f(0)) for a nonzero positive definite f.

    Raises:
        DomainError: f is zero or not positive definite
    """
    if f.is_zero():
        raise DomainError("density of the zero function is undefined")
    if not is_positive_definite(f):
        raise DomainError("density needs a positive definite function")
    # f(0) = (1/n) sum_k f^(k) > 0 for nonzero positive definite f
    return float(f.transform[0].real / (f.n * f.values[0].real))
