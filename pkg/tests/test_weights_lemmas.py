"""
Tests for the prime-level inequalities and the lcm bound
"""
import pytest

from utils.errors import DomainError
from weights.lemmas import (
    LAMBDA,
    prime_power_tau,
    lemma1_lhs,
    lemma1_bound,
    prime_exponents,
    lemma2_lhs,
    lemma2_bound,
    ladder_cap_holds,
    lemma2_case_bound,
    lcm_upto,
    lcm_bound_check,
    CASE_TOP_DIVIDES,
)
from weights.sweeps import lemma1_sweep, lemma2_sweep, lcm_sweep


class TestPrimePowerTau:

    def test_absorbed_exponent(self):
        assert prime_power_tau(3, 1, 2) == 1.0
        assert prime_power_tau(2, 3, 5) == 1.0

    def test_two_adic_vanishing_case(self):
        assert prime_power_tau(2, 0, 1) == 0.0
        assert prime_power_tau(2, 1, 3) == 0.0

    def test_generic_values(self):
        assert prime_power_tau(2, 0, 2) == pytest.approx(-(2 ** -0.5))
        assert prime_power_tau(3, 0, 2) == pytest.approx(-1 / 3)
        assert prime_power_tau(5, 0, 1) == pytest.approx(-(5 ** -0.5))


class TestGeometricSum:

    def test_bound_holds_at_extreme_ratio(self):
        for p in (2, 3, 5, 7):
            mu = p ** -0.5
            for n in range(6):
                for k in range(12):
                    assert lemma1_lhs(p, mu, n, k) >= lemma1_bound(mu, n) - 1e-12

    def test_mu_out_of_range(self):
        with pytest.raises(DomainError):
            lemma1_lhs(5, 0.1, 3, 2)
        with pytest.raises(DomainError):
            lemma1_lhs(5, 1.0, 3, 2)

    def test_sweep_passes(self):
        report = lemma1_sweep(p_max=13, n_max=8, k_max=12)
        assert report['status'] == 'PASS'
        assert report['violation_count'] == 0
        assert report['extreme'] >= -1e-12


class TestLadders:

    def test_small_primes_climb_every_step(self):
        assert prime_exponents(2, 9) == list(range(10))
        assert prime_exponents(3, 9) == list(range(10))

    def test_middle_primes(self):
        assert prime_exponents(5, 9) == [0, 0, 1, 1, 2, 2, 3, 3, 4, 4]
        assert prime_exponents(11, 9) == [0, 0, 0, 1, 1, 1, 2, 2, 2, 3]
        assert prime_exponents(509, 9) == [0] * 8 + [1, 1]

    def test_large_primes_never_enter(self):
        assert prime_exponents(521, 9) == [0] * 10

    def test_cap(self):
        for p in (2, 3, 5, 7, 11, 13, 509):
            assert ladder_cap_holds(p, 9)

    def test_ladder_bound(self):
        for p in (2, 3, 5, 7, 11, 13):
            for k in range(30):
                assert lemma2_lhs(p, 7, k) >= lemma2_bound(7) - 1e-12

    def test_case_bound(self):
        result = lemma2_case_bound(3, 6, 4)
        assert result['case'] == CASE_TOP_DIVIDES
        assert result['holds']
        assert result['bound'] == pytest.approx(-(LAMBDA ** 7) / (1 - LAMBDA))

    def test_sweep_passes(self):
        report = lemma2_sweep(l_max=7, k_factor=3)
        assert report['status'] == 'PASS'
        assert report['checked'] > 0

    def test_negative_length(self):
        with pytest.raises(DomainError):
            prime_exponents(3, -1)


class TestLcm:

    def test_small_values(self):
        assert lcm_upto(1) == 1
        assert lcm_upto(10) == 2520
        assert lcm_upto(20) == 232792560

    def test_bound(self):
        K, ok = lcm_bound_check(10)
        assert K == 2520
        assert ok

    def test_sweep(self):
        report = lcm_sweep(300)
        assert report['status'] == 'PASS'
        assert report['extreme'] <= 1.04

    def test_invalid(self):
        with pytest.raises(DomainError):
            lcm_upto(0)
