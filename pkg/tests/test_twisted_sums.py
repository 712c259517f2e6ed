import math

import mpmath
import numpy as np
import pytest

import oracles
from primelab.ap_sums import ApClass
from primelab.twisted_sums import (
    ALL_FACTORS_1MOD4,
    mobius_log_ratio,
    mobius_log_sum,
    reference_constant,
    restricted_difference,
    twisted_mobius_partials,
    twisted_mobius_sum,
    zeta_s2_opposite_sign,
)

mpmath.mp.dps = 30


def brute_twisted(x, s, keep=lambda n: True):
    return math.fsum(oracles.mu(n) * math.log(n) / n**s for n in range(1, x + 1) if keep(n))


def zeta_ratio(s):
    return float(mpmath.zeta(s, derivative=1) / mpmath.zeta(s) ** 2)


def l_mod4_ratio(s):
    s = mpmath.mpf(s)
    factor = 1 - 2**-s
    L = factor * mpmath.zeta(s)
    dL = mpmath.log(2) * 2**-s * mpmath.zeta(s) + factor * mpmath.zeta(s, derivative=1)
    return float(dL / L**2)


class TestTwistedSum:
    def test_x_one(self, small):
        for s in (1, 1.5, 2):
            assert twisted_mobius_sum(small, 1, s) == 0.0

    def test_x_ten_s_one(self, small):
        want = brute_twisted(10, 1)
        assert want == pytest.approx(-0.78377, abs=1e-5)
        assert twisted_mobius_sum(small, 10, 1) == pytest.approx(want, abs=1e-12)

    @pytest.mark.parametrize("s", [1, 1.5, 2, 3])
    def test_against_brute(self, small, s):
        assert twisted_mobius_sum(small, 2000, s) == pytest.approx(brute_twisted(2000, s), abs=1e-10)

    def test_residue_restriction(self, small):
        got = twisted_mobius_sum(small, 2000, 2, ApClass(4, 1))
        assert got == pytest.approx(brute_twisted(2000, 2, lambda n: n % 4 == 1), abs=1e-12)

    def test_all_factors_restriction(self, small):
        keep = lambda n: all(p % 4 == 1 for p, _ in oracles.factor(n))
        got = twisted_mobius_sum(small, 2000, 2, ALL_FACTORS_1MOD4)
        assert got == pytest.approx(brute_twisted(2000, 2, keep), abs=1e-12)

    def test_unknown_restriction(self, small):
        with pytest.raises(ValueError):
            twisted_mobius_sum(small, 100, 2, "primes")

    def test_s_below_one(self, small):
        with pytest.raises(ValueError):
            twisted_mobius_sum(small, 100, 0.5)

    def test_partials_match_single_calls(self, medium):
        xs = [10, 1000, 50_000, 100_000]
        assert twisted_mobius_partials(medium, xs, 2) == [twisted_mobius_sum(medium, x, 2) for x in xs]

    def test_reproducible(self, medium):
        a = twisted_mobius_sum(medium, 100_000, 1)
        b = twisted_mobius_sum(medium, 100_000, 1)
        assert a == b

    def test_convergence_at_s2(self, big):
        steps = [abs(twisted_mobius_sum(big, 2 * x, 2) - twisted_mobius_sum(big, x, 2)) for x in (10**4, 10**5, 10**6)]
        assert steps[0] > steps[1] > steps[2]

    def test_s2_near_zeta_ratio(self, big):
        assert twisted_mobius_sum(big, 10**6, 2) == pytest.approx(zeta_ratio(2), abs=1e-5)

    def test_restricted_difference_positive(self, big):
        assert restricted_difference(big, 10**6, 2) > 0


class TestReferenceConstant:
    def test_s1(self):
        assert reference_constant(1, "zeta_s1") == -1.0

    def test_s2(self):
        assert reference_constant(2, "zeta_s2") == pytest.approx(zeta_ratio(2), abs=1e-13)
        assert reference_constant(2, "zeta_s2") == pytest.approx(-0.346495, abs=1e-6)
        assert zeta_s2_opposite_sign() == pytest.approx(0.346495, abs=1e-6)

    def test_mismatched_s(self):
        with pytest.raises(ValueError):
            reference_constant(2, "zeta_s1")
        with pytest.raises(ValueError):
            reference_constant(1, "zeta_s2")
        with pytest.raises(ValueError):
            reference_constant(1, "L_mod4")
        with pytest.raises(ValueError):
            reference_constant(2, "eta")

    @pytest.mark.parametrize("s", [1.5, 2, 3])
    def test_l_mod4(self, s):
        assert reference_constant(s, "L_mod4") == pytest.approx(l_mod4_ratio(s), abs=1e-9)

    def test_l_mod4_stable(self):
        a = reference_constant(2, "L_mod4", 10**6)
        b = reference_constant(2, "L_mod4", 2 * 10**6)
        assert abs(a - b) < 1e-8


class TestMobiusLog:
    def test_x_one(self, small):
        assert mobius_log_sum(small, 1) == 0.0

    def test_x_ten(self, small):
        want = sum(oracles.mu(n) * math.log(n) for n in range(1, 11))
        assert want == pytest.approx(-1.25276, abs=1e-5)
        assert mobius_log_sum(small, 10) == pytest.approx(want, abs=1e-12)

    def test_large(self, big):
        assert abs(mobius_log_sum(big, 10**6)) < 0.05 * 10**6 * math.log(10**6)
        assert mobius_log_ratio(big, 10**6) < 0.05
