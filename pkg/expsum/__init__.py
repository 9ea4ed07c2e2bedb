"""
Exponential Sums Module
Quadratic sums, exact leading terms, the error envelope and weighted diagnostics
"""
from expsum.quadratic_sums import (
    QuadraticSumTable,
    partial_sum,
    naive_partial_sum,
    complete_gauss_sum,
    complete_gauss_sums,
    squared_modulus_double_sum,
    FLOAT_PRECISION,
)
from expsum.leading_terms import (
    LeadingTerm,
    ErrorEnvelope,
    vartheta,
    tau,
    error_envelope,
    leading_term_table,
    DIVIDES,
    VANISHES,
    GENERIC,
)
from expsum.weighted_sums import (
    dirichlet_weighted_sum,
    fejer_weighted_sum,
    dirichlet_kernel,
    fejer_kernel,
)
from expsum.calibration import (
    weyl_scale,
    weyl_ratio_table,
    calibrate_c1,
    check_weyl_envelope,
    gauss_identity_sweep,
    evaluator_equivalence_sweep,
)

__all__ = [
    'QuadraticSumTable',
    'partial_sum',
    'naive_partial_sum',
    'complete_gauss_sum',
    'complete_gauss_sums',
    'squared_modulus_double_sum',
    'FLOAT_PRECISION',
    'LeadingTerm',
    'ErrorEnvelope',
    'vartheta',
    'tau',
    'error_envelope',
    'leading_term_table',
    'DIVIDES',
    'VANISHES',
    'GENERIC',
    'dirichlet_weighted_sum',
    'fejer_weighted_sum',
    'dirichlet_kernel',
    'fejer_kernel',
    'weyl_scale',
    'weyl_ratio_table',
    'calibrate_c1',
    'check_weyl_envelope',
    'gauss_identity_sweep',
    'evaluator_equivalence_sweep'
]
