"""
Exhaustive and seeded sweeps of the prime-level lemmas and the scheme contract
"""
from datetime import datetime
from math import log
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
import sympy

from arith.bigint import decimal_digits
from utils.logger import setup_logger, LogContext
from weights.lemmas import (
    lemma1_lhs,
    lemma1_bound,
    lemma2_lhs,
    lemma2_bound,
    ladder_cap_holds,
    lemma2_case_bound,
    lcm_bound_check,
)
from weights.weight_scheme import (
    WeightScheme,
    weighted_tau,
    prime_reduction_bound,
    lemma3_witness_prime,
)

logger = setup_logger(__name__)

# Float rounding allowance when a bound is met with equality
TOLERANCE = 1e-12


def _report(name: str, checked: int, violations: List[Dict], extreme: Optional[float], **extra) -> Dict[str, Any]:
    status = 'PASS' if not violations else 'FAIL'
    if violations:
        logger.warning(f"{name}: {len(violations)} violations out of {checked}")
    else:
        logger.info(f"{name}: {checked} cases, no violations")
    report = {
        'name': name,
        'status': status,
        'checked': checked,
        'violation_count': len(violations),
        'extreme': extreme,
        'violations': pd.DataFrame(violations),
        'generation_time': datetime.now().isoformat()
    }
    report.update(extra)
    return report


def lemma1_sweep(p_max: int = 47, n_max: int = 20, k_max: int = 40) -> Dict[str, Any]:
    """
    Check sum_{j<=n} mu^j tau(p^j, p^k) >= -mu^(n+1)/(1-mu) for
    mu in {p^(-1/2), (1 + p^(-1/2))/2} over every prime p <= p_max.

    Returns:
        Report; extreme is the smallest slack value - bound
    """
    violations = []
    checked = 0
    min_slack = None
    with LogContext(logger, f"Geometric prime-power sweep p<={p_max}"):
        for p in sympy.primerange(2, p_max + 1):
            base = p ** -0.5
            for mu in (base, (1 + base) / 2):
                for n in range(n_max + 1):
                    bound = lemma1_bound(mu, n)
                    for k in range(k_max + 1):
                        value = lemma1_lhs(p, mu, n, k)
                        slack = value - bound
                        checked += 1
                        if min_slack is None or slack < min_slack:
                            min_slack = slack
                        if slack < -TOLERANCE:
                            violations.append({'p': p, 'mu': mu, 'n': n, 'k': k, 'value': value, 'bound': bound})
    return _report('lemma1', checked, violations, min_slack)


def lemma2_sweep(l_max: int = 12, k_factor: int = 4) -> Dict[str, Any]:
    """
    Check the ladder bound B_l(p, k) >= -5 lambda^l and the cap p^(d_l) < 2^(2l)
    for 1 <= l <= l_max, primes p < 2^l and k <= k_factor * l.

    The sharper two-case bound is checked alongside.
    """
    violations = []
    checked = 0
    min_ratio = None
    with LogContext(logger, f"Ladder sweep l<={l_max}"):
        for l in range(1, l_max + 1):
            bound = lemma2_bound(l)
            for p in sympy.primerange(2, 2 ** l):
                if not ladder_cap_holds(p, l):
                    violations.append({'l': l, 'p': p, 'k': None, 'kind': 'cap', 'value': None, 'bound': None})
                for k in range(k_factor * l + 1):
                    value = lemma2_lhs(p, l, k)
                    checked += 1
                    # value / |bound| is scale free across l
                    ratio = value / abs(bound)
                    if min_ratio is None or ratio < min_ratio:
                        min_ratio = ratio
                    if value < bound - TOLERANCE:
                        violations.append({'l': l, 'p': p, 'k': k, 'kind': 'ladder', 'value': value, 'bound': bound})
                    case = lemma2_case_bound(p, l, k)
                    if not case['holds']:
                        violations.append({'l': l, 'p': p, 'k': k, 'kind': case['case'],
                                           'value': value, 'bound': case['bound']})
    return _report('lemma2', checked, violations, min_ratio)


def structured_denominators(primes: List[int], count: int, rng: np.random.Generator,
                            max_factors: int = 4, max_exponent: int = 8) -> List[int]:
    """Random products of prime powers p^a with p from primes and 1 <= a <= max_exponent"""
    values = []
    for _ in range(count):
        factors = int(rng.integers(1, min(max_factors, len(primes)) + 1))
        q = 1
        for idx in rng.choice(len(primes), size=factors, replace=False):
            q *= primes[int(idx)] ** int(rng.integers(1, max_exponent + 1))
        values.append(q)
    return values


def scheme_contract_sweep(
    scheme: WeightScheme,
    q_max: int = 100000,
    random_count: int = 10000,
    seed: int = 0
) -> Dict[str, Any]:
    """
    Check weighted_tau(q) >= -delta/2 for every q <= q_max and for seeded
    structured q built from the primes of the scheme (plus a few larger ones).

    Returns:
        Report; extreme is the smallest weighted_tau observed
    """
    floor = -scheme.delta / 2
    violations = []
    min_value = None
    argmin = None

    rng = np.random.default_rng(seed)
    primes = list(scheme.prime_table) + list(sympy.primerange(2 ** scheme.l, 2 ** scheme.l + 200))
    structured = structured_denominators(primes, random_count, rng)

    with LogContext(logger, f"Scheme contract sweep delta={scheme.delta}"):
        candidates = list(range(1, q_max + 1)) + structured
        for q in candidates:
            value = weighted_tau(q, scheme)
            if min_value is None or value < min_value:
                min_value, argmin = value, q
            if value < floor - TOLERANCE:
                violations.append({'q': str(q), 'value': value, 'floor': floor})

    return _report('scheme_contract', len(candidates), violations, min_value,
                   delta=scheme.delta, argmin=str(argmin), seed=seed)


def prime_reduction_sweep(scheme: WeightScheme, q_values: Iterable[int]) -> Dict[str, Any]:
    """
    Check the reduction to primes: the witness prime satisfies the termwise
    inequality and weighted_tau(q) >= min over p | q of the prime-level sum.
    """
    violations = []
    checked = 0
    for q in q_values:
        checked += 1
        witness = lemma3_witness_prime(q, scheme)
        full = weighted_tau(q, scheme)
        reduced = prime_reduction_bound(q, scheme)
        if not witness['holds'] or full < reduced - TOLERANCE:
            violations.append({'q': str(q), 'p': witness['p'], 'weighted_tau': full, 'prime_bound': reduced})
    return _report('prime_reduction', checked, violations, None, delta=scheme.delta)


def lcm_sweep(n_max: int = 2000) -> Dict[str, Any]:
    """Check log lcm(1..n) <= 1.04 n for n <= n_max; extreme is the largest log K / n"""
    violations = []
    worst = None
    with LogContext(logger, f"lcm growth sweep n<={n_max}"):
        for n in range(1, n_max + 1):
            K, ok = lcm_bound_check(n)
            ratio = log(K) / n
            if worst is None or ratio > worst:
                worst = ratio
            if not ok:
                violations.append({'n': n, 'K_digits': decimal_digits(K)})
    return _report('lcm_bound', n_max, violations, worst)
