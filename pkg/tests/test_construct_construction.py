"""
Tests for construction schedules, the coefficient expansion and the grid evaluator
"""
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from arith.rational_angle import reduce
from construct.construction import (
    ConstructionSchedule,
    build_construction,
    toy_construction,
    single_dilation_schedule,
    corrupt_construction,
    FLAT,
    FLAT_WEIGHTS,
    COLLAPSED_CHAIN,
)
from construct.evaluator import ConstructionEvaluator, eval_T, naive_eval_T, grid_min, verify_bound
from construct.exponent_law import degree_table, exponent_law
from construct.polynomial import (
    SparseCosinePolynomial,
    expand_coefficients,
    shift_normalize,
    is_perfect_square,
)
from utils.errors import DomainError, ResourceLimitError
from weights.lemmas import LAMBDA


class TestSchedule:

    def test_toy_shape(self, toy):
        assert toy.l == 1
        assert toy.m == 1
        assert toy.degree() == 36
        assert toy.term_count() == 6
        assert toy.check_invariants() == []

    def test_toy_rejects_broken_chain(self):
        with pytest.raises(DomainError):
            toy_construction([2, 3], [3])
        with pytest.raises(DomainError):
            toy_construction([1, 2], [5, 4])

    def test_exact_weights(self, toy):
        assert toy.exact_weight(0) == (Fraction(1), Fraction(0))
        assert toy.exact_weight(2) == (Fraction(1, 2), Fraction(0))
        # 2^(-3/2) = sqrt(2)/4
        assert toy.exact_weight(3) == (Fraction(0), Fraction(1, 4))

    def test_build_construction(self, scheme_05):
        cons = build_construction(0.5, scheme_05)
        assert cons.l == 9
        assert cons.m == 16
        assert cons.M_exponents == tuple(2 * (16 + k) for k in range(1, 17))
        assert cons.M_seq[0] == scheme_05.L_max ** 34
        assert cons.check_invariants() == []
        summary = cons.summary()
        assert summary['m_at_most_9_over_delta']
        assert summary['M_exponent_at_most_36_over_delta']

    def test_round_trip_by_exponents(self, scheme_05):
        cons = build_construction(0.5, scheme_05)
        data = cons.to_dict()
        assert 'M_seq' not in data
        assert ConstructionSchedule.from_dict(data) == cons

    def test_toy_round_trip(self, toy):
        assert ConstructionSchedule.from_dict(toy.to_dict()) == toy

    def test_delta_outside_range(self, scheme_04):
        with pytest.raises(DomainError):
            build_construction(0.6)
        with pytest.raises(DomainError):
            build_construction(0.5, scheme_04)

    def test_single_dilation_baseline(self):
        cons = single_dilation_schedule(10, 50)
        assert cons.L_seq == (2520,)
        assert cons.M_seq == (50,)

    def test_corruptions(self, toy):
        flat = corrupt_construction(toy, FLAT_WEIGHTS)
        assert flat.weight_kind == FLAT
        assert np.allclose(flat.weights(), [0.5, 0.5])
        collapsed = corrupt_construction(toy, COLLAPSED_CHAIN)
        assert collapsed.L_seq == (1, 1)
        with pytest.raises(DomainError):
            corrupt_construction(toy, 'shuffled')


class TestExpansion:

    def test_toy_support_and_coefficients(self, toy):
        poly = expand_coefficients(toy)
        assert poly.support == (1, 4, 9, 16, 36)
        assert poly.a0 == 0.0
        assert poly.coeffs[4] == pytest.approx(1 / 3)
        assert poly.coeffs[1] == pytest.approx(1 / (3 * (1 + LAMBDA)))
        assert poly.coeffs[36] == pytest.approx(LAMBDA / (3 * (1 + LAMBDA)))
        assert sum(poly.coeffs.values()) == pytest.approx(1.0)
        assert poly.has_square_support()
        assert poly.degree == 36

    def test_cap(self, toy):
        poly = expand_coefficients(toy, cap=10)
        assert poly.support == (1, 4, 9)
        assert poly.degree == 36

    def test_term_cap(self, toy):
        with pytest.raises(ResourceLimitError):
            expand_coefficients(toy, max_terms=3)

    def test_shift_normalize(self, toy):
        poly = shift_normalize(toy, 0.5)
        assert poly.a0 == pytest.approx(1 / 3)
        assert poly.value_at_zero() == pytest.approx(1.0)
        with pytest.raises(DomainError):
            shift_normalize(toy, 0.5, verified_min=-0.7)

    def test_polynomial_grid_matches_pointwise(self):
        poly = SparseCosinePolynomial(a0=0.25, coeffs={1: 0.5, 9: 0.25})
        G = 40
        assert np.allclose(poly.grid_values(G), poly.evaluate(np.arange(G) / G))
        assert poly.derivative_bound() == pytest.approx(2 * np.pi * (0.5 + 9 * 0.25))

    def test_serialization_keeps_big_frequencies(self):
        d = 10 ** 40
        poly = SparseCosinePolynomial(a0=0.1, coeffs={d * d: 0.9})
        restored = SparseCosinePolynomial.from_dict(poly.to_dict())
        assert restored.coeffs == {d * d: 0.9}
        assert restored.degree == d * d

    def test_perfect_squares(self):
        assert is_perfect_square(0)
        assert is_perfect_square(10 ** 40)
        assert not is_perfect_square(10 ** 41)
        assert not is_perfect_square(-4)


class TestEvaluation:

    def test_value_at_zero(self, toy):
        assert eval_T(reduce(0, 1), toy, precision=53) == pytest.approx(1.0)
        assert float(eval_T(reduce(0, 1), toy, precision=128)) == pytest.approx(1.0)

    def test_matches_expansion_and_direct_loop(self, toy):
        poly = expand_coefficients(toy)
        for p, q in [(1, 7), (2, 5), (3, 11), (5, 12)]:
            x = reduce(p, q)
            fast = eval_T(x, toy, precision=53)
            assert fast == pytest.approx(poly.evaluate(p / q), abs=1e-12)
            assert fast == pytest.approx(naive_eval_T(x, toy), abs=1e-12)

    def test_even_symmetry(self, toy):
        evaluator = ConstructionEvaluator(toy)
        for p, q in [(1, 9), (2, 13), (7, 30)]:
            assert evaluator.evaluate(reduce(p, q)) == pytest.approx(evaluator.evaluate(reduce(-p, q)), abs=1e-13)

    def test_grid_matches_expansion(self, toy):
        G = 96
        evaluator = ConstructionEvaluator(toy)
        assert np.allclose(evaluator.grid_values(G), expand_coefficients(toy).grid_values(G), atol=1e-12)

    def test_grid_min(self, toy):
        value, argmin = grid_min(toy, 64, precision=53)
        values = expand_coefficients(toy).grid_values(64)
        assert value == pytest.approx(values.min(), abs=1e-12)
        assert argmin.q in (1, 2, 4, 8, 16, 32, 64)

    def test_verify_report(self, toy):
        report = verify_bound(toy, 64, precision=80, include_values=True)
        assert report['margin'] == pytest.approx(report['min_value'] + 0.5)
        assert report['status'] == ('PASS' if report['margin'] >= 0 else 'FAIL')
        assert report['value_at_zero'] == pytest.approx(1.0)
        assert report['even_symmetry_error'] < 1e-12
        assert report['certification']['tier'] == 'derivative'
        assert len(report['values']) == 64
        assert len(report['worst']) == 10

    def test_verify_needs_delta(self):
        with pytest.raises(DomainError):
            verify_bound(toy_construction([1], [4]), 16)


@pytest.mark.slow
class TestFullConstruction:

    def test_collapsed_chain_fails_at_two_fifths(self, scheme_04):
        cons = corrupt_construction(build_construction(0.4, scheme_04), COLLAPSED_CHAIN)
        value = eval_T(reduce(2, 5), cons, precision=53)
        assert value == pytest.approx(-1 / sqrt(5), abs=1e-9)
        report = verify_bound(cons, 10, precision=53)
        assert report['status'] == 'FAIL'
        assert report['argmin'] in ('2/5', '3/5')
        assert report['certification']['tier'] == 'grid_only'

    def test_half_passes_on_fine_grid(self, scheme_05):
        cons = build_construction(0.5, scheme_05)
        report = verify_bound(cons, 2 ** 13, precision=128)
        assert report['status'] == 'PASS'
        assert report['value_at_zero'] == pytest.approx(1.0)
        assert report['even_symmetry_error'] < 1e-9

    def test_exponent_law(self):
        report = exponent_law()
        assert report['status'] == 'PASS'
        assert 2.4 <= report['slope'] <= 3.6
        table = report['table']
        assert list(table['l']) == [9, 9, 9, 10]
        assert (np.diff(table['log_n']) > 0).all()


def test_degree_table_single_delta():
    table = degree_table([0.5])
    assert table.loc[0, 'l'] == 9
    assert table.loc[0, 'm'] == 16
    with pytest.raises(DomainError):
        exponent_law([0.5])
