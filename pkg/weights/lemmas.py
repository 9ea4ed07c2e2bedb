"""
Prime-level inequalities behind the weight scheme: geometric sums of tau over
prime powers, the per-prime exponent ladders and the lcm growth bound.
"""
from math import log
from typing import Dict, List, Tuple

import sympy

from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

LAMBDA = 2 ** -0.5
LADDER_BOUND_FACTOR = 5.0
LCM_GROWTH_CONSTANT = 1.04

CASE_TOP_DIVIDES = 'top_divides'
CASE_TOP_NONPOSITIVE = 'top_nonpositive'


def prime_power_tau(p: int, j: int, k: int) -> float:
    """
    tau(p^j, p^k) in closed form.

    p = 2: 1 if j >= k/2, 0 if j - k/2 = -1/2, else -2^(j + 1/2 - k/2)
    p >= 3: 1 if j >= k/2, else -p^(j - k/2)
    """
    if 2 * j >= k:
        return 1.0
    if p == 2:
        if 2 * j - k == -1:
            return 0.0
        return -(2.0 ** (j + 0.5 - k / 2))
    return -(float(p) ** (j - k / 2))


def lemma1_lhs(p: int, mu: float, n: int, k: int) -> float:
    """
    Sum_{j=0..n} mu^j tau(p^j, p^k).

    Args:
        p: Prime
        mu: Ratio with p^(-1/2) <= mu < 1
        n: Last index (>= 0)
        k: Exponent of p in q (>= 0)

    Returns:
        The geometric sum; it is bounded below by -mu^(n+1)/(1-mu)
    """
    if not (p ** -0.5) - 1e-15 <= mu < 1:
        raise DomainError(f"mu={mu} outside [p^(-1/2), 1) for p={p}")
    if n < 0 or k < 0:
        raise DomainError("n and k must be nonnegative")
    return sum(mu ** j * prime_power_tau(p, j, k) for j in range(n + 1))


def lemma1_bound(mu: float, n: int) -> float:
    return -(mu ** (n + 1)) / (1 - mu)


def prime_exponents(p: int, l: int) -> List[int]:
    """
    Exponent ladder d_0..d_l of the prime p for chain length l.

    With 2^e <= p < 2^(e+1), d_j = floor(j/e) capped at f = floor(l/e):
    the exponent grows by one every e steps. Primes >= 2^l never divide
    the chain and get the all-zero ladder.

    Args:
        p: Prime
        l: Chain length (>= 0)

    Returns:
        Nondecreasing list of l+1 exponents with p^(d_l) < 2^(2l)
    """
    if l < 0:
        raise DomainError(f"l must be nonnegative, got {l}")
    if p >= 2 ** l:
        return [0] * (l + 1)
    e = p.bit_length() - 1
    f = l // e
    return [min(j // e, f) for j in range(l + 1)]


def lemma2_lhs(p: int, l: int, k: int) -> float:
    """Sum_{j=0..l} lambda^j tau(p^(d_j), p^k) over the ladder of p"""
    ladder = prime_exponents(p, l)
    return sum(LAMBDA ** j * prime_power_tau(p, d, k) for j, d in enumerate(ladder))


def lemma2_bound(l: int) -> float:
    return -LADDER_BOUND_FACTOR * LAMBDA ** l


def ladder_cap_holds(p: int, l: int) -> bool:
    """p^(d_l) < 2^(2l), exact integer comparison"""
    return p ** prime_exponents(p, l)[-1] < 2 ** (2 * l)


def lemma2_case_bound(p: int, l: int, k: int) -> Dict:
    """
    Sharper bound from the two cases of the ladder argument.

    If the top rung already absorbs p^k (tau(p^f, p^k) = 1) the sum is at
    least -lambda^(l+1)/(1-lambda); otherwise at least -2 lambda^(l+1)/(1-lambda).

    Returns:
        Dictionary with case, bound, value and holds
    """
    f = prime_exponents(p, l)[-1]
    value = lemma2_lhs(p, l, k)
    tail = LAMBDA ** (l + 1) / (1 - LAMBDA)
    if prime_power_tau(p, f, k) == 1.0:
        case, bound = CASE_TOP_DIVIDES, -tail
    else:
        case, bound = CASE_TOP_NONPOSITIVE, -2 * tail
    return {
        'p': p,
        'l': l,
        'k': k,
        'case': case,
        'bound': bound,
        'value': value,
        'holds': value >= bound - 1e-12
    }


def lcm_upto(n: int) -> int:
    """K = lcm(1..n) as the product of the largest prime powers <= n"""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    K = 1
    for p in sympy.primerange(2, n + 1):
        power = p
        while power * p <= n:
            power *= p
        K *= power
    return K


def lcm_bound_check(n: int) -> Tuple[int, bool]:
    """
    Check log lcm(1..n) <= 1.04 n.

    Returns:
        (K, ok)
    """
    K = lcm_upto(n)
    return K, log(K) <= LCM_GROWTH_CONSTANT * n

