"""
Construction Module
Assembly, expansion and evaluation of the square-spectrum polynomial T
"""
from construct.construction import (
    ConstructionSchedule,
    build_construction,
    toy_construction,
    single_dilation_schedule,
    corrupt_construction,
    GEOMETRIC,
    FLAT,
    FLAT_WEIGHTS,
    COLLAPSED_CHAIN,
)
from construct.polynomial import (
    SparseCosinePolynomial,
    expand_coefficients,
    shift_normalize,
    is_perfect_square,
)
from construct.evaluator import (
    ConstructionEvaluator,
    eval_T,
    naive_eval_T,
    grid_min,
    verify_bound,
)
from construct.exponent_law import degree_table, exponent_law

__all__ = [
    'ConstructionSchedule',
    'build_construction',
    'toy_construction',
    'single_dilation_schedule',
    'corrupt_construction',
    'GEOMETRIC',
    'FLAT',
    'FLAT_WEIGHTS',
    'COLLAPSED_CHAIN',
    'SparseCosinePolynomial',
    'expand_coefficients',
    'shift_normalize',
    'is_perfect_square',
    'ConstructionEvaluator',
    'eval_T',
    'naive_eval_T',
    'grid_min',
    'verify_bound',
    'degree_table',
    'exponent_law'
]
