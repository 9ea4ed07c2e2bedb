"""
Tests for the leading terms, the error envelope and the weighted sums
"""
from fractions import Fraction
from math import sqrt

import pytest

from arith.rational_angle import reduce, exp_unit
from expsum.leading_terms import (
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
from utils.errors import DomainError


class TestVartheta:

    @pytest.mark.parametrize('L, q, case, value', [
        (1, 1, DIVIDES, 1.0),
        (2, 4, DIVIDES, 1.0),
        (1, 2, VANISHES, 0.0),
        (3, 18, VANISHES, 0.0),
        (1, 5, GENERIC, 1 / sqrt(5)),
        (1, 3, GENERIC, 1 / sqrt(3)),
        (1, 4, GENERIC, 1 / sqrt(2)),
    ])
    def test_cases(self, L, q, case, value):
        term = vartheta(L, q)
        assert term.case == case
        assert term.value == pytest.approx(value)

    def test_tau_negates_generic_only(self):
        assert tau(1, 5).value == pytest.approx(-1 / sqrt(5))
        assert tau(2, 4).value == 1.0
        assert tau(1, 2).value == 0.0

    def test_huge_dilation(self):
        term = vartheta(10 ** 40, 7)
        assert term.case == GENERIC
        assert term.r == 7

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            vartheta(0, 5)
        with pytest.raises(DomainError):
            tau(1, 0)

    def test_table_covers_every_denominator(self):
        table = leading_term_table(2, 12)
        assert sorted(table) == list(range(1, 13))
        assert table[3]['tau'].value == pytest.approx(-1 / sqrt(3))
        assert table[8]['vartheta'].case == VANISHES


class TestErrorEnvelope:

    def test_zero_at_q_one_and_exact_point(self):
        envelope = error_envelope(L=3, M=10, q=1, eps=0, c1=2.5)
        assert envelope.value == 0.0
        assert not envelope.clamped

    def test_components(self):
        envelope = error_envelope(L=1, M=100, q=7, eps=0, c1=1.0)
        assert envelope.weyl == pytest.approx(sqrt(1.9459101090932196) / 10)
        assert envelope.tail == pytest.approx(sqrt(7 * 1.9459101090932196) / 100)
        assert envelope.value == pytest.approx(envelope.weyl + envelope.tail)

    def test_clamped_at_two(self):
        envelope = error_envelope(L=10 ** 30, M=10 ** 40, q=3, eps=1e-5, c1=2.5)
        assert envelope.value == 2.0
        assert envelope.clamped

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            error_envelope(L=1, M=0, q=3, eps=0, c1=1.0)
        with pytest.raises(DomainError):
            error_envelope(L=1, M=5, q=3, eps=0, c1=0.0)

    def test_plug_in_value(self):
        envelope = error_envelope(L=1, M=10 ** 4, q=100, eps=0, c1=1.0)
        assert envelope.value == pytest.approx(0.0236, abs=5e-4)

    def test_monotone_in_q_eps_and_L(self):
        base = dict(L=2, M=500, q=30, eps=Fraction(1, 10 ** 9), c1=0.2589)
        value = error_envelope(**base).value
        for key, larger in [('q', 31), ('q', 3000), ('eps', Fraction(1, 10 ** 6)), ('L', 3), ('L', 40)]:
            assert error_envelope(**{**base, key: larger}).value >= value

    def test_nonincreasing_in_M_at_exact_points(self):
        values = [error_envelope(L=5, M=M, q=97, eps=0, c1=0.2589).value for M in (1, 2, 10, 100, 10 ** 4, 10 ** 8)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_stays_in_range(self, rng):
        for _ in range(200):
            envelope = error_envelope(
                L=int(rng.integers(0, 10 ** 6)),
                M=int(rng.integers(1, 10 ** 6)),
                q=int(rng.integers(1, 10 ** 9)),
                eps=float(rng.random()) * 10 ** -float(rng.integers(0, 30)),
                c1=float(rng.uniform(0.01, 5.0)),
            )
            assert 0.0 <= envelope.value <= 2.0


class TestWeightedSums:

    def test_dirichlet_half(self):
        assert dirichlet_weighted_sum(reduce(1, 2), 2, precision=53) == pytest.approx(1 / 3)
        assert complex(dirichlet_weighted_sum(reduce(1, 2), 2, precision=128)) == pytest.approx(1 / 3)

    def test_fejer_half(self):
        # k = 2 carries zero weight when M = 2
        assert fejer_weighted_sum(reduce(1, 2), 2, precision=53) == pytest.approx(-1.0)
        assert complex(fejer_weighted_sum(reduce(1, 2), 2, precision=128)) == pytest.approx(-1.0)

    def test_normalized_at_zero(self):
        assert dirichlet_weighted_sum(reduce(0, 1), 17, precision=53) == pytest.approx(1.0)
        assert fejer_weighted_sum(reduce(0, 1), 17, precision=53) == pytest.approx(1.0)

    def test_single_term_is_the_unit_exponential(self):
        for x in (reduce(1, 3), reduce(2, 7), reduce(5, 12)):
            assert complex(dirichlet_weighted_sum(x, 1, precision=128)) == pytest.approx(complex(exp_unit(x, 128)))
            assert dirichlet_weighted_sum(x, 1, precision=53) == pytest.approx(complex(exp_unit(x, 128)))

    def test_fejer_needs_two_terms(self):
        with pytest.raises(DomainError):
            fejer_weighted_sum(reduce(1, 3), 1)

    def test_kernels(self):
        assert dirichlet_kernel(0.0, 5) == pytest.approx(1.0)
        assert fejer_kernel(0.0, 4) == pytest.approx(1.0)
        # Fejer kernel is nonnegative
        assert all(fejer_kernel(x / 50, 6) >= -1e-12 for x in range(50))
