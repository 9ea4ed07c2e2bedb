"""
Construction schedules: the chain L_0..L_l with its weights and the moduli M_1 < ... < M_m
that together define T(x) = (1/(m Lambda)) sum_j sum_k lambda^j Re S(x, L_j, M_k).
"""
from dataclasses import dataclass, replace
from datetime import datetime
from fractions import Fraction
from math import log
from typing import Any, Dict, List, Optional, Tuple

import mpmath
import numpy as np

from approx.error_schedule import choose_m, MAX_SCHEDULE_DELTA
from arith.bigint import decimal_digits, decimal_to_int, int_to_decimal
from utils.errors import DomainError
from utils.logger import setup_logger
from weights.lemmas import LAMBDA, lcm_upto
from weights.weight_scheme import WeightScheme, build_scheme

logger = setup_logger(__name__)

GEOMETRIC = 'geometric'
FLAT = 'flat'

FLAT_WEIGHTS = 'flat_weights'
COLLAPSED_CHAIN = 'collapsed_chain'
CORRUPTION_MODES = (FLAT_WEIGHTS, COLLAPSED_CHAIN)


@dataclass(frozen=True)
class ConstructionSchedule:
    """
    Everything needed to evaluate T.

    M_exponents is set when M_k = L_max^(M_exponents[k]) so the moduli can be
    serialized by exponent instead of by value.
    """
    delta: Optional[float]
    L_seq: Tuple[int, ...]
    M_seq: Tuple[int, ...]
    weight_kind: str = GEOMETRIC
    label: str = 'construction'
    M_exponents: Optional[Tuple[int, ...]] = None
    scheme: Optional[WeightScheme] = None

    @property
    def l(self) -> int:
        return len(self.L_seq) - 1

    @property
    def m(self) -> int:
        return len(self.M_seq)

    @property
    def L_max(self) -> int:
        return max(self.L_seq)

    @property
    def M_max(self) -> int:
        return self.M_seq[-1]

    def weights(self) -> np.ndarray:
        """w_j / Lambda for j = 0..l, summing to 1"""
        if self.weight_kind == FLAT:
            raw = np.ones(self.l + 1)
        else:
            raw = LAMBDA ** np.arange(self.l + 1, dtype=np.float64)
        return raw / raw.sum()

    def weights_mp(self, precision: int) -> List[mpmath.mpf]:
        with mpmath.workprec(precision + 20):
            lam = mpmath.mpf(1) if self.weight_kind == FLAT else 1 / mpmath.sqrt(2)
            raw = [lam ** j for j in range(self.l + 1)]
            total = mpmath.fsum(raw)
            return [w / total for w in raw]

    def exact_weight(self, j: int) -> Tuple[Fraction, Fraction]:
        """
        lambda^j as (r, s) meaning r + s*sqrt(2).

        2^(-j/2) is rational for even j and a rational multiple of sqrt(2) for odd j.
        """
        if self.weight_kind == FLAT:
            return Fraction(1), Fraction(0)
        if j % 2 == 0:
            return Fraction(1, 2 ** (j // 2)), Fraction(0)
        return Fraction(0), Fraction(1, 2 ** ((j + 1) // 2))

    def log_degree(self) -> float:
        """log n for the declared degree n = M_max^2 L_max^2"""
        return 2 * log(self.M_max) + 2 * log(self.L_max)

    def degree(self) -> int:
        return self.M_max ** 2 * self.L_max ** 2

    def degree_digits(self) -> int:
        return decimal_digits(self.degree())

    def term_count(self) -> int:
        """Number of (j, k') terms of the full expansion"""
        return (self.l + 1) * sum(self.M_seq)

    def check_invariants(self) -> List[str]:
        problems = []
        if not self.L_seq or self.L_seq[0] < 1:
            problems.append("L_seq must start with a positive integer")
        for j in range(self.l):
            if self.L_seq[j + 1] % self.L_seq[j] != 0:
                problems.append(f"L_{j} does not divide L_{j + 1}")
        if any(M < 1 for M in self.M_seq):
            problems.append("every M_k must be positive")
        if any(b <= a for a, b in zip(self.M_seq, self.M_seq[1:])):
            problems.append("M_seq must be strictly increasing")
        if self.delta is not None and self.label == 'construction':
            if not 8 / self.delta - 1e-9 <= self.m <= 9 / self.delta + 1e-9:
                problems.append(f"m={self.m} outside [8/delta, 9/delta]")
        return problems

    def summary(self) -> Dict[str, Any]:
        log_n = self.log_degree()
        report = {
            'label': self.label,
            'delta': self.delta,
            'l': self.l,
            'm': self.m,
            'weight_kind': self.weight_kind,
            'log_L_max': log(self.L_max),
            'log_M_max': log(self.M_max),
            'log_n': log_n,
            'log_log_n': log(log_n) if log_n > 0 else None,
            'n_digits': self.degree_digits(),
            'generation_time': datetime.now().isoformat()
        }
        if self.delta is not None:
            report['m_at_most_9_over_delta'] = self.m <= 9 / self.delta + 1e-9
            report['M_exponent_at_most_36_over_delta'] = 4 * self.m <= 36 / self.delta + 1e-9
            report['log_n_power'] = log_n ** (-1 / 3) if log_n > 0 else None
        return report

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form; moduli by exponent of L_max when they follow the standard rule"""
        data = {
            'label': self.label,
            'delta': self.delta,
            'weight_kind': self.weight_kind,
            'lambda': '2^(-1/2)' if self.weight_kind == GEOMETRIC else '1',
            'L_seq': [int_to_decimal(L) for L in self.L_seq],
            'm': self.m
        }
        if self.M_exponents is not None:
            data['M_exponents'] = list(self.M_exponents)
        else:
            data['M_seq'] = [int_to_decimal(M) for M in self.M_seq]
        if self.scheme is not None:
            data['scheme'] = self.scheme.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ConstructionSchedule':
        L_seq = tuple(decimal_to_int(L) for L in data['L_seq'])
        exponents = data.get('M_exponents')
        if exponents is not None:
            L_max = max(L_seq)
            M_seq = tuple(L_max ** int(e) for e in exponents)
            exponents = tuple(int(e) for e in exponents)
        else:
            M_seq = tuple(decimal_to_int(M) for M in data['M_seq'])
        scheme = WeightScheme.from_dict(data['scheme']) if data.get('scheme') else None
        cons = cls(
            delta=data.get('delta'),
            L_seq=L_seq,
            M_seq=M_seq,
            weight_kind=data.get('weight_kind', GEOMETRIC),
            label=data.get('label', 'construction'),
            M_exponents=exponents,
            scheme=scheme
        )
        problems = cons.check_invariants()
        if problems:
            raise DomainError(f"invalid construction: {'; '.join(problems)}")
        return cons


def build_construction(delta: float, scheme: Optional[WeightScheme] = None) -> ConstructionSchedule:
    """
    Assemble the construction for delta with L = L_max.

    Args:
        delta: Target in (0, 0.56]
        scheme: Prebuilt weight scheme for the same delta (optional)

    Returns:
        ConstructionSchedule with M_k = L_max^(2(m+k)), k = 1..m
    """
    if not 0 < delta <= MAX_SCHEDULE_DELTA:
        raise DomainError(f"delta must lie in (0, {MAX_SCHEDULE_DELTA}], got {delta}")
    if scheme is None:
        scheme = build_scheme(delta)
    elif scheme.delta != delta:
        raise DomainError(f"scheme was built for delta={scheme.delta}, not {delta}")

    m = choose_m(delta)
    exponents = tuple(2 * (m + k) for k in range(1, m + 1))
    M_seq = tuple(scheme.L_max ** e for e in exponents)
    cons = ConstructionSchedule(
        delta=delta,
        L_seq=scheme.L_seq,
        M_seq=M_seq,
        M_exponents=exponents,
        scheme=scheme
    )
    logger.info(f"Construction delta={delta}: l={cons.l}, m={m}, log n={cons.log_degree():.2f}")
    return cons


def toy_construction(L_seq, M_seq, delta: Optional[float] = None, weight_kind: str = GEOMETRIC) -> ConstructionSchedule:
    """Small explicit schedule whose full expansion is cheap"""
    cons = ConstructionSchedule(
        delta=delta,
        L_seq=tuple(int(L) for L in L_seq),
        M_seq=tuple(int(M) for M in M_seq),
        weight_kind=weight_kind,
        label='toy'
    )
    problems = cons.check_invariants()
    if problems:
        raise DomainError(f"invalid toy schedule: {'; '.join(problems)}")
    return cons


def single_dilation_schedule(n: int, M: int, delta: Optional[float] = None) -> ConstructionSchedule:
    """
    T_{L,M}(x) = (1/M) sum_k cos(2 pi L^2 k^2 x) with one very composite L = lcm(1..n).

    This baseline dips well below zero near rationals with small q/(q, 2L^2).
    """
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    return ConstructionSchedule(
        delta=delta,
        L_seq=(lcm_upto(n),),
        M_seq=(int(M),),
        label='single_dilation'
    )


def corrupt_construction(cons: ConstructionSchedule, mode: str) -> ConstructionSchedule:
    """
    Negative controls.

    flat_weights replaces lambda by 1; collapsed_chain sets every L_j to 1,
    which leaves only the leading term at L = 1 (for example -1/sqrt(5) at x = 2/5).
    """
    if mode == FLAT_WEIGHTS:
        return replace(cons, weight_kind=FLAT, label=f"{cons.label}:{FLAT_WEIGHTS}")
    if mode == COLLAPSED_CHAIN:
        # M_exponents keep referring to the original L_max
        return replace(cons, L_seq=(1,) * len(cons.L_seq), M_exponents=None, scheme=None,
                       label=f"{cons.label}:{COLLAPSED_CHAIN}")
    raise DomainError(f"unknown corruption mode {mode!r}, expected one of {CORRUPTION_MODES}")
