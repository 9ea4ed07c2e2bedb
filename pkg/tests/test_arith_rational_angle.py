"""
Tests for exact angles, quadratic fractional parts and the unit exponential
"""
from fractions import Fraction

import mpmath
import pytest

from arith.bigint import decimal_digits, decimal_to_int, int_to_decimal
from arith.rational_angle import (
    RationalAngle,
    reduce,
    from_fraction,
    parse_angle,
    rationalize,
    frac_quadratic,
    exp_unit,
)
from utils.errors import DomainError


class TestReduce:

    def test_reduces_to_lowest_terms(self):
        assert reduce(3, 6) == RationalAngle(1, 2)

    def test_negative_numerator_wraps_into_unit_interval(self):
        assert reduce(-1, 3) == RationalAngle(2, 3)

    def test_negative_denominator(self):
        assert reduce(5, -3) == RationalAngle(1, 3)

    def test_integers_map_to_zero(self):
        x = reduce(14, 7)
        assert x == RationalAngle(0, 1)
        assert x.is_zero

    def test_zero_denominator_raises(self):
        with pytest.raises(DomainError):
            reduce(1, 0)

    def test_non_canonical_constructor_raises(self):
        with pytest.raises(DomainError):
            RationalAngle(2, 4)

    def test_addition_and_reflection(self):
        x = reduce(1, 3)
        assert x + reduce(1, 2) == reduce(5, 6)
        assert x.reflect() == reduce(2, 3)
        assert (x + x.reflect()).is_zero

    def test_reduce_is_idempotent(self, rng):
        for _ in range(50):
            p = int(rng.integers(-10 ** 9, 10 ** 9)) * 10 ** 30 + int(rng.integers(0, 97))
            q = int(rng.integers(1, 10 ** 6)) * 10 ** 20 + 1
            x = reduce(p, q)
            assert reduce(x.p, x.q) == x
            assert 0 <= x.p < x.q


def test_from_fraction_and_distance():
    x = from_fraction(Fraction(7, 4))
    assert x == RationalAngle(3, 4)
    assert x.distance_to(1, 2) == Fraction(1, 4)


def test_parse_angle():
    assert parse_angle('3/9') == RationalAngle(1, 3)
    assert parse_angle(' 5 ') == RationalAngle(0, 1)
    with pytest.raises(DomainError):
        parse_angle('abc')
    with pytest.raises(DomainError):
        parse_angle('1/0')


def test_rationalize_rounds_to_grid():
    assert rationalize(0.25, 8) == RationalAngle(1, 4)
    assert rationalize(0.3, 10) == RationalAngle(3, 10)
    with pytest.raises(DomainError):
        rationalize(0.5, 0)


class TestFracQuadratic:

    def test_small_case(self):
        # 3^2 * 2^2 * 1/5 = 36/5
        assert frac_quadratic(3, 2, reduce(1, 5)) == RationalAngle(1, 5)

    def test_huge_dilation_matches_direct_integer_arithmetic(self):
        L = 10 ** 60 + 7
        x = reduce(4, 11)
        expected = reduce((5 * L) ** 2 * 4, 11)
        assert frac_quadratic(5, L, x) == expected

    def test_denominator_can_shrink(self):
        # 2^2 * 1/4 is an integer
        assert frac_quadratic(1, 2, reduce(1, 4)).is_zero

    def test_additive_in_the_angle(self, rng):
        for _ in range(40):
            k = int(rng.integers(1, 10 ** 6))
            L = int(rng.integers(1, 10 ** 6)) * 10 ** 25 + 3
            x1 = reduce(int(rng.integers(0, 10 ** 9)), int(rng.integers(1, 10 ** 9)))
            x2 = reduce(int(rng.integers(0, 10 ** 9)), int(rng.integers(1, 10 ** 9)))
            assert frac_quadratic(k, L, x1 + x2) == frac_quadratic(k, L, x1) + frac_quadratic(k, L, x2)


class TestExpUnit:

    def test_quarter_turn(self):
        value = exp_unit(reduce(1, 4), precision=128)
        assert abs(value.real) < mpmath.mpf(2) ** -120
        assert abs(value.imag - 1) < mpmath.mpf(2) ** -120

    def test_zero(self):
        assert exp_unit(reduce(0, 1)) == 1

    def test_unit_modulus(self):
        value = exp_unit(reduce(3, 7), precision=200)
        assert abs(abs(value) - 1) < mpmath.mpf(2) ** -190

    def test_precision_floor(self):
        with pytest.raises(DomainError):
            exp_unit(reduce(1, 3), precision=40)

    def test_third_of_a_turn(self):
        value = exp_unit(reduce(1, 3), precision=128)
        assert float(value.real) == pytest.approx(-0.5, abs=1e-15)
        assert float(value.imag) == pytest.approx(0.8660254037844386, abs=1e-15)
        with mpmath.workprec(140):
            assert abs(value.imag - mpmath.sqrt(3) / 2) < mpmath.mpf(2) ** -126

    def test_product_matches_sum_of_angles(self, rng):
        precision = 128
        bound = 4 * mpmath.mpf(2) ** -precision
        for _ in range(30):
            x = reduce(int(rng.integers(0, 10 ** 9)), int(rng.integers(1, 10 ** 9)))
            y = reduce(int(rng.integers(0, 10 ** 9)), int(rng.integers(1, 10 ** 9)))
            a, b, c = exp_unit(x, precision), exp_unit(y, precision), exp_unit(x + y, precision)
            with mpmath.workprec(2 * precision):
                assert abs(a * b - c) < bound


class TestBigInt:

    def test_powers_of_ten_beyond_str_limit(self):
        n = 10 ** 5000
        assert decimal_digits(n) == 5001
        assert decimal_digits(n - 1) == 5000
        text = int_to_decimal(n)
        assert text == '1' + '0' * 5000

    def test_parse_long_decimal(self):
        text = '9' * 6000
        assert decimal_to_int(text) == 10 ** 6000 - 1
        assert decimal_to_int('-' + text) == -(10 ** 6000 - 1)

    def test_small_values(self):
        assert decimal_digits(0) == 1
        assert decimal_digits(-12345) == 5
        assert int_to_decimal(-42) == '-42'

    def test_large_angle_prints_without_str_limit(self):
        q = 3 ** 20000
        x = reduce(1, q)
        numerator, denominator = str(x).split('/')
        assert numerator == '1'
        assert decimal_to_int(denominator) == q
