"""
Oracle Module
Grid LP for the extremal free coefficient over square spectra
"""
from oracle.simplex import (
    SimplexResult,
    TableauSimplex,
    solve_lp,
    OPTIMAL,
    INFEASIBLE,
    UNBOUNDED,
    ITERATION_LIMIT,
)
from oracle.extremal import (
    ExtremalProblem,
    ExtremalSolution,
    square_spectrum,
    default_grid,
    solve_extremal,
    certify_nonneg,
    gamma_table,
    gamma_sweep_report,
    compare_with_construction,
    FREE,
    NONNEGATIVE,
    SIGN_MODES,
)

__all__ = [
    'SimplexResult',
    'TableauSimplex',
    'solve_lp',
    'OPTIMAL',
    'INFEASIBLE',
    'UNBOUNDED',
    'ITERATION_LIMIT',
    'ExtremalProblem',
    'ExtremalSolution',
    'square_spectrum',
    'default_grid',
    'solve_extremal',
    'certify_nonneg',
    'gamma_table',
    'gamma_sweep_report',
    'compare_with_construction',
    'FREE',
    'NONNEGATIVE',
    'SIGN_MODES'
]
