"""
Tests for the extremal LP, its certificate and the gamma tables
"""
import math

import numpy as np
import pytest

from construct.polynomial import SparseCosinePolynomial
from oracle.extremal import (
    ExtremalProblem,
    solve_extremal,
    certify_nonneg,
    gamma_table,
    gamma_sweep_report,
    compare_with_construction,
    square_spectrum,
    default_grid,
    FREE,
    NONNEGATIVE,
)
from oracle.simplex import OPTIMAL
from utils.errors import DomainError


def test_square_spectrum():
    assert square_spectrum(0) == ()
    assert square_spectrum(1) == (1,)
    assert square_spectrum(26) == (1, 4, 9, 16, 25)
    assert default_grid(10) == 1280


class TestSolveExtremal:

    def test_single_frequency(self):
        solution = solve_extremal(ExtremalProblem(n=1))
        assert solution.status == OPTIMAL
        assert solution.a0 == pytest.approx(0.5)
        assert solution.coefficients[1] == pytest.approx(0.5)

    def test_free_mode_single_frequency(self):
        solution = solve_extremal(ExtremalProblem(n=1, sign_mode=FREE))
        assert solution.a0 == pytest.approx(0.5)

    def test_empty_spectrum(self):
        solution = solve_extremal(ExtremalProblem(n=0))
        assert solution.a0 == 1.0
        assert solution.coefficients == {}

    def test_solution_is_nonnegative_on_the_grid(self):
        prob = ExtremalProblem(n=16)
        solution = solve_extremal(prob)
        poly = solution.polynomial()
        assert poly.value_at_zero() == pytest.approx(1.0)
        assert poly.grid_values(prob.G).min() >= -1e-9
        assert solution.max_violation <= 1e-9
        assert solution.duality_gap is None or solution.duality_gap <= 1e-8

    def test_free_mode_is_not_worse(self):
        free = solve_extremal(ExtremalProblem(n=9, sign_mode=FREE))
        nonneg = solve_extremal(ExtremalProblem(n=9, sign_mode=NONNEGATIVE))
        assert free.a0 <= nonneg.a0 + 1e-9
        assert nonneg.a0 < 0.5

    def test_problem_validation(self):
        with pytest.raises(DomainError):
            ExtremalProblem(n=-1)
        with pytest.raises(DomainError):
            ExtremalProblem(n=4, sign_mode='signed')
        with pytest.raises(DomainError):
            ExtremalProblem(n=10, G=20)


class TestCertificate:

    def test_constant(self):
        ok, margin = certify_nonneg(SparseCosinePolynomial(a0=1.0), 16)
        assert ok
        assert margin == 1.0

    def test_strictly_positive_polynomial(self):
        poly = SparseCosinePolynomial(a0=0.6, coeffs={1: 0.4})
        ok, margin = certify_nonneg(poly, 64)
        assert ok
        assert margin == pytest.approx(0.2 - 2 * math.pi * 0.4 / 128)

    def test_touching_zero_is_not_certified(self):
        ok, margin = certify_nonneg(SparseCosinePolynomial(a0=0.5, coeffs={1: 0.5}), 64)
        assert not ok
        assert margin < 0

    def test_lp_optimum_certifies_after_lift(self):
        solution = solve_extremal(ExtremalProblem(n=1))
        lifted = solution.polynomial().shifted(0.01, 1.0)
        ok, _ = certify_nonneg(lifted, 4096)
        assert ok


class TestGammaTable:

    def test_small_table(self):
        table = gamma_table([1, 2, 4])
        assert list(table.columns) == ['n', 'gamma_free', 'gamma_nonneg', 'iterations',
                                       'certified_margin', 'max_duality_gap', 'status']
        assert (table['status'] == OPTIMAL).all()
        assert table.loc[0, 'gamma_nonneg'] == pytest.approx(0.5)
        # spectrum of n = 2 is still {1}
        assert table.loc[1, 'gamma_nonneg'] == pytest.approx(0.5)
        assert (table['gamma_free'] <= table['gamma_nonneg'] + 1e-9).all()

    def test_empty_list(self):
        table = gamma_table([])
        assert table.empty
        assert 'gamma_nonneg' in table.columns

    def test_workers_give_the_same_values(self):
        serial = gamma_table([1, 4, 9], G=1152)
        parallel = gamma_table([1, 4, 9], G=1152, max_workers=3)
        assert np.allclose(serial['gamma_nonneg'], parallel['gamma_nonneg'])
        assert np.allclose(serial['gamma_free'], parallel['gamma_free'])

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            gamma_table([1], modes=['signed'])

    @pytest.mark.slow
    def test_square_caps_on_a_common_grid(self):
        n_list = [1, 4, 9, 16, 25, 36, 49]
        report = gamma_sweep_report(n_list)
        assert report['status'] == 'PASS', report['problems']
        assert report['G'] == 128 * 49
        table = report['table']
        assert (table['status'] == OPTIMAL).all()
        assert not table[['gamma_free', 'gamma_nonneg']].isna().any().any()
        assert table.loc[0, 'gamma_nonneg'] == pytest.approx(0.5, abs=1e-6)

    @pytest.mark.slow
    def test_large_spectrum_is_feasible_on_the_constraint_grid(self):
        for mode in (FREE, NONNEGATIVE):
            prob = ExtremalProblem(n=49, sign_mode=mode, G=128 * 49)
            solution = solve_extremal(prob)
            assert solution.status == OPTIMAL
            assert solution.max_violation <= 1e-9
            assert solution.polynomial().grid_values(prob.G).min() >= -1e-9
            assert solution.polynomial().value_at_zero() == pytest.approx(1.0)

    def test_sweep_report(self):
        report = gamma_sweep_report([1, 4, 9, 16])
        assert report['status'] == 'PASS', report['problems']
        assert report['G'] == 128 * 16
        values = report['table']['gamma_nonneg'].to_numpy()
        assert (np.diff(values) <= 1e-8).all()


class TestCompareWithConstruction:

    def test_toy(self, toy):
        report = compare_with_construction(toy)
        assert report['status'] == 'PASS'
        assert report['support'] == [1, 4, 9, 16, 36]
        assert report['lp_a0'] <= report['construction_a0'] + 1e-9
        assert report['shift'] >= 0.5
        assert report['construction_a0'] == pytest.approx(report['shift'] / (1 + report['shift']))

    def test_capped_support(self, toy):
        report = compare_with_construction(toy, cap=10)
        assert report['support'] == [1, 4, 9]
        assert report['status'] == 'PASS'
        assert report['value_at_zero'] < 1.0
        assert report['construction_a0'] == pytest.approx(
            report['shift'] / (report['value_at_zero'] + report['shift']))
        assert report['lp_a0'] <= report['construction_a0'] + 1e-9
