"""
Weights Module
Prime-power ladders, the weight scheme and its verification sweeps
"""
from weights.lemmas import (
    LAMBDA,
    prime_power_tau,
    lemma1_lhs,
    lemma1_bound,
    prime_exponents,
    lemma2_lhs,
    lemma2_bound,
    lemma2_case_bound,
    ladder_cap_holds,
    lcm_upto,
    lcm_bound_check,
)
from weights.weight_scheme import (
    WeightScheme,
    choose_l,
    build_scheme,
    weighted_tau,
    prime_level_sum,
    prime_reduction_bound,
    lemma3_witness_prime,
    scheme_summary,
    GUARANTEED_DELTA_MAX,
)
from weights.sweeps import (
    lemma1_sweep,
    lemma2_sweep,
    scheme_contract_sweep,
    prime_reduction_sweep,
    lcm_sweep,
    structured_denominators,
)

__all__ = [
    'LAMBDA',
    'prime_power_tau',
    'lemma1_lhs',
    'lemma1_bound',
    'prime_exponents',
    'lemma2_lhs',
    'lemma2_bound',
    'lemma2_case_bound',
    'ladder_cap_holds',
    'lcm_upto',
    'lcm_bound_check',
    'WeightScheme',
    'choose_l',
    'build_scheme',
    'weighted_tau',
    'prime_level_sum',
    'prime_reduction_bound',
    'lemma3_witness_prime',
    'scheme_summary',
    'GUARANTEED_DELTA_MAX',
    'lemma1_sweep',
    'lemma2_sweep',
    'scheme_contract_sweep',
    'prime_reduction_sweep',
    'lcm_sweep',
    'structured_denominators'
]
