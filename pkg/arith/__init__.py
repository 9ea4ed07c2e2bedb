"""
Arithmetic Module
Exact rational angles, quadratic angle reduction and the unit exponential
"""
from arith.bigint import int_to_decimal, decimal_to_int, decimal_digits
from arith.rational_angle import (
    RationalAngle,
    reduce,
    from_fraction,
    parse_angle,
    rationalize,
    frac_quadratic,
    exp_unit,
    check_precision,
    DEFAULT_PRECISION,
    MIN_PRECISION,
)

__all__ = [
    'int_to_decimal',
    'decimal_to_int',
    'decimal_digits',
    'RationalAngle',
    'reduce',
    'from_fraction',
    'parse_angle',
    'rationalize',
    'frac_quadratic',
    'exp_unit',
    'check_precision',
    'DEFAULT_PRECISION',
    'MIN_PRECISION'
]
