"""
Weight scheme: geometric weights lambda^j and the divisibility chain L_0 | ... | L_l
whose weighted leading terms stay above -delta/2 at every denominator q.
"""
import json
from dataclasses import dataclass, field
from datetime import datetime
from math import ceil, gcd, log, log2
from typing import Any, Dict, List, Tuple

import mpmath
import numpy as np
import sympy

from arith.bigint import decimal_digits, decimal_to_int, int_to_decimal
from expsum.leading_terms import tau
from utils.errors import DomainError, InfeasibleSchemeError
from utils.logger import setup_logger
from weights.lemmas import LAMBDA, prime_exponents, prime_power_tau

logger = setup_logger(__name__)

# Above this delta the window argument still yields an l, but the
# downstream guarantees are stated for delta <= 0.56 only
GUARANTEED_DELTA_MAX = 0.56

LAMBDA_TAG = '2^(-1/2)'


@dataclass(frozen=True)
class WeightScheme:
    """
    delta, chain length l, lambda = 2^(-1/2), Lambda = sum_{j<=l} lambda^j and
    the chain L_0 = 1 | L_1 | ... | L_l built from per-prime exponent ladders.

    prime_table holds the ladder of every prime below 2^l; larger primes
    have the all-zero ladder (see ladder()).
    """
    delta: float
    l: int
    L_seq: Tuple[int, ...]
    prime_table: Dict[int, Tuple[int, ...]] = field(compare=False)
    delta_in_guaranteed_range: bool = True

    @property
    def lam(self) -> float:
        return LAMBDA

    @property
    def Lambda(self) -> float:
        return float(sum(LAMBDA ** j for j in range(self.l + 1)))

    @property
    def L_max(self) -> int:
        return self.L_seq[-1]

    def ladder(self, p: int) -> Tuple[int, ...]:
        ladder = self.prime_table.get(p)
        if ladder is None:
            return (0,) * (self.l + 1)
        return ladder

    def weights(self) -> np.ndarray:
        """Normalized weights lambda^j / Lambda, j = 0..l, as float64"""
        raw = LAMBDA ** np.arange(self.l + 1, dtype=np.float64)
        return raw / raw.sum()

    def weights_mp(self, precision: int) -> List[mpmath.mpf]:
        """Normalized weights at the given precision"""
        with mpmath.workprec(precision + 20):
            lam = 1 / mpmath.sqrt(2)
            raw = [lam ** j for j in range(self.l + 1)]
            total = mpmath.fsum(raw)
            return [w / total for w in raw]

    def check_invariants(self) -> List[str]:
        """Return the list of violated invariants (empty when the scheme is valid)"""
        problems = []
        window = 2.0 ** (-self.l / 2)
        if not (self.delta / 20 <= window <= self.delta / 10):
            problems.append(f"2^(-l/2)={window} outside [delta/20, delta/10]")
        if self.L_seq[0] != 1:
            problems.append("L_0 != 1")
        if len(self.L_seq) != self.l + 1:
            problems.append("chain length mismatch")
        for j in range(len(self.L_seq) - 1):
            if self.L_seq[j + 1] % self.L_seq[j] != 0:
                problems.append(f"L_{j} does not divide L_{j + 1}")
        cap = 2 ** (2 * self.l)
        for p, ladder in self.prime_table.items():
            if p ** ladder[-1] >= cap:
                problems.append(f"p^d_l >= 2^(2l) for p={p}")
        rebuilt = _chain_from_table(self.prime_table, self.l)
        if tuple(rebuilt) != tuple(self.L_seq):
            problems.append("L_seq inconsistent with prime ladders")
        return problems

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form; big integers as decimal strings"""
        return {
            'delta': self.delta,
            'l': self.l,
            'lambda': LAMBDA_TAG,
            'Lambda': self.Lambda,
            'delta_in_guaranteed_range': self.delta_in_guaranteed_range,
            'L_seq': [int_to_decimal(L) for L in self.L_seq],
            'prime_table': {str(p): list(ladder) for p, ladder in sorted(self.prime_table.items())}
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'WeightScheme':
        if data.get('lambda', LAMBDA_TAG) != LAMBDA_TAG:
            raise DomainError(f"unsupported lambda {data.get('lambda')}")
        scheme = cls(
            delta=float(data['delta']),
            l=int(data['l']),
            L_seq=tuple(decimal_to_int(L) for L in data['L_seq']),
            prime_table={int(p): tuple(int(d) for d in ladder) for p, ladder in data['prime_table'].items()},
            delta_in_guaranteed_range=bool(data.get('delta_in_guaranteed_range', True))
        )
        problems = scheme.check_invariants()
        if problems:
            raise DomainError(f"invalid weight scheme: {'; '.join(problems)}")
        return scheme

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> 'WeightScheme':
        return cls.from_dict(json.loads(text))


def _chain_from_table(prime_table: Dict[int, Tuple[int, ...]], l: int) -> List[int]:
    chain = []
    for j in range(l + 1):
        L = 1
        for p, ladder in prime_table.items():
            if ladder[j]:
                L *= p ** ladder[j]
        chain.append(L)
    return chain


def choose_l(delta: float) -> int:
    """
    Smallest integer l with delta/20 <= 2^(-l/2) <= delta/10.

    The window has width 2 in l, so an integer exists for every delta in (0, 1).
    """
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    l = max(0, ceil(2 * log2(10 / delta)) - 1)
    while 2.0 ** (-l / 2) > delta / 10:
        l += 1
    if 2.0 ** (-l / 2) < delta / 20:
        # Nearest delta whose window contains this l
        raise InfeasibleSchemeError(delta, nearest_feasible_delta=10 * 2.0 ** (-l / 2))
    return l


def build_scheme(delta: float) -> WeightScheme:
    """
    Build the weight scheme for delta.

    Args:
        delta: Target in (0, 1); guarantees downstream hold for delta <= 0.56

    Returns:
        WeightScheme with L_j = prod_{p < 2^l} p^(d_j^p)
    """
    l = choose_l(delta)
    in_range = delta <= GUARANTEED_DELTA_MAX
    if not in_range:
        logger.warning(f"delta={delta} exceeds {GUARANTEED_DELTA_MAX}; scheme built but downstream bounds are not guaranteed")

    primes = list(sympy.primerange(2, 2 ** l)) if l >= 2 else []
    prime_table = {p: tuple(prime_exponents(p, l)) for p in primes}
    L_seq = _chain_from_table(prime_table, l)

    scheme = WeightScheme(
        delta=delta,
        l=l,
        L_seq=tuple(L_seq),
        prime_table=prime_table,
        delta_in_guaranteed_range=in_range
    )
    logger.info(f"Weight scheme for delta={delta}: l={l}, {len(primes)} primes, L_max has {decimal_digits(scheme.L_max)} digits")
    return scheme


def weighted_tau(q: int, scheme: WeightScheme) -> float:
    """
    (1/Lambda) sum_{j=0..l} lambda^j tau(L_j, q); at least -delta/2 for a valid scheme.

    Args:
        q: Denominator (>= 1)
        scheme: Weight scheme

    Returns:
        Weighted leading term
    """
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    weights = scheme.weights()
    total = 0.0
    for w, L in zip(weights, scheme.L_seq):
        total += w * tau(L, q).value
    return float(total)


def prime_level_sum(p: int, k: int, scheme: WeightScheme) -> float:
    """(1/Lambda) sum_j lambda^j tau(p^(d_j), p^k) for the ladder of p"""
    weights = scheme.weights()
    return float(sum(w * prime_power_tau(p, d, k) for w, d in zip(weights, scheme.ladder(p))))


def prime_reduction_bound(q: int, scheme: WeightScheme) -> float:
    """
    Minimum prime-level weighted sum over the primes dividing q.

    weighted_tau(q) is never below this value; q = 1 gives 1.
    """
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    if q == 1:
        return 1.0
    return min(prime_level_sum(p, k, scheme) for p, k in sympy.factorint(q).items())


def lemma3_witness_prime(q: int, scheme: WeightScheme) -> Dict[str, Any]:
    """
    Prime p | q with tau(L_j, q) >= tau(p^(d_j), p^k) for every j, k = v_p(q).

    Let t be the first index with q | L_t^2 and m = t - 1 (m = l when there is
    none). With r = q / (q, L_m^2): p = 2 if r = 2 mod 4, otherwise the
    smallest prime factor of r.

    Returns:
        Dictionary with p, k, the termwise comparison and holds
    """
    if q < 1:
        raise DomainError(f"q must be positive, got {q}")
    if q == 1:
        return {'q': 1, 'p': None, 'k': 0, 'holds': True, 'terms': []}

    first = next((j for j, L in enumerate(scheme.L_seq) if pow(L, 2, q) == 0), None)
    m = scheme.l if first is None else first - 1
    L_m_sq = scheme.L_seq[m] ** 2
    r = q // gcd(q, L_m_sq)
    p = 2 if r % 4 == 2 else int(min(sympy.factorint(r)))
    k = sympy.multiplicity(p, q)

    terms = []
    holds = True
    for j, (L, d) in enumerate(zip(scheme.L_seq, scheme.ladder(p))):
        full = tau(L, q).value
        prime_level = prime_power_tau(p, d, k)
        ok = full >= prime_level - 1e-12
        holds = holds and ok
        terms.append({'j': j, 'tau_full': full, 'tau_prime': prime_level, 'ok': ok})

    if not holds:
        logger.warning(f"Prime reduction failed termwise at q={q}, p={p}")
    return {'q': q, 'p': int(p), 'k': int(k), 'holds': holds, 'terms': terms}


def scheme_summary(scheme: WeightScheme) -> Dict[str, Any]:
    """Headline numbers of a scheme for reports"""
    return {
        'delta': scheme.delta,
        'l': scheme.l,
        'Lambda': scheme.Lambda,
        'prime_count': len(scheme.prime_table),
        'L_max_digits': decimal_digits(scheme.L_max),
        'log_L_max': log(scheme.L_max),
        'delta_in_guaranteed_range': scheme.delta_in_guaranteed_range,
        'window_value': 2.0 ** (-scheme.l / 2),
        'generation_time': datetime.now().isoformat()
    }
