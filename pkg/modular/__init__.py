"""
Modular Module
Squares in Z/nZ, positive definite functions and square-difference-free sets
"""
from modular.modular_function import (
    ModularFunction,
    dft_matrix,
    indicator,
    autocorrelation,
    is_positive_definite,
    density,
)
from modular.squares import (
    SquareSet,
    SquareFreeSet,
    squares_mod,
    difference_set,
    avoids_squares,
    max_squarefree_set,
    difference_equivalence_sweep,
    EXHAUSTIVE_THRESHOLD,
)
from modular.corollary import (
    build_g,
    threshold_polynomial,
    corollary_check,
    density_sweep,
    corollary_table,
)

__all__ = [
    'ModularFunction',
    'dft_matrix',
    'indicator',
    'autocorrelation',
    'is_positive_definite',
    'density',
    'SquareSet',
    'SquareFreeSet',
    'squares_mod',
    'difference_set',
    'avoids_squares',
    'max_squarefree_set',
    'difference_equivalence_sweep',
    'EXHAUSTIVE_THRESHOLD',
    'build_g',
    'threshold_polynomial',
    'corollary_check',
    'density_sweep',
    'corollary_table'
]
