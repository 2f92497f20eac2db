from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings

from finite_heat.adler_moser import (
    chain,
    free_constants,
    log_second_derivative,
    potential,
    recursion_residual,
    theta,
    wronskian,
)
from finite_heat.exact_core import MPoly, RatFun, parse
from strategies import small_fractions

x = MPoly.symbol("x")
X = RatFun.symbol("x")


def brute_wronskian(funcs):
    n = len(funcs)
    rows = []
    cur = list(funcs)
    for _ in range(n):
        rows.append(cur)
        cur = [f.diff("x") for f in cur]
    total = MPoly(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = MPoly(sign)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def zero_constants(k):
    return {name: 0 for name in free_constants(k)}


class TestChain:
    def test_first(self):
        assert chain(1).poly == x

    def test_second_fixes_tau2(self):
        phi2 = chain(2).poly
        # Wr(x, phi) = x phi' - phi; its constant term is -c for phi = x^3/6 + c
        wr = x * phi2.diff("x") - phi2
        assert wr == parse("x^3/3 - s3").numerator
        assert phi2 == parse("x^3/6 + s3").numerator

    def test_third_zero_constants(self):
        assert chain(3, {"s3": 0, "s5": 0}).poly == x**5 * Fraction(1, 120)

    @pytest.mark.parametrize("k", range(2, 7))
    def test_double_derivative(self, k):
        assert chain(k).poly.diff("x").diff("x") == chain(k - 1).poly

    @pytest.mark.parametrize("k", range(1, 7))
    def test_degree(self, k):
        assert chain(k).poly.degree("x") == 2 * k - 1


class TestTheta:
    def test_theta0(self):
        assert theta(0).poly == 1

    def test_theta1(self):
        assert theta(1).poly == x

    def test_theta2(self):
        assert str(theta(2).poly) == "x^3/3 - s3"

    def test_theta3_by_permutation_expansion(self):
        phis = [chain(j).poly for j in (1, 2, 3)]
        assert theta(3).poly == brute_wronskian(phis)
        assert theta(3).degree == 6
        assert set(theta(3).poly.free_symbols()) == {"x", "s3", "s5"}

    def test_theta3_bilinear_recursion(self):
        t1, t2, t3 = (theta(j).monic() for j in (1, 2, 3))
        assert t3.diff("x") * t1 - t3 * t1.diff("x") == 5 * t2 * t2

    @pytest.mark.parametrize("k", range(1, 5))
    def test_recursion_monic(self, k):
        assert recursion_residual(k).is_zero()

    @pytest.mark.parametrize("k", range(1, 5))
    def test_recursion_wronskian_normalization(self, k):
        # the chain normalization makes the constant 1
        lo, mid, hi = (theta(j).poly for j in (k - 1, k, k + 1))
        assert hi.diff("x") * lo - hi * lo.diff("x") == mid * mid

    @pytest.mark.parametrize("k", range(0, 6))
    def test_degree(self, k):
        assert theta(k).degree == k * (k + 1) // 2

    def test_bareiss_matches_brute_force_k4(self):
        phis = [chain(j).poly for j in range(1, 5)]
        assert wronskian(phis) == brute_wronskian(phis)


class TestPotential:
    def test_zero(self):
        assert potential(0).u.is_zero()

    def test_cell1(self):
        assert potential(1).u == -2 / X**2

    def test_cell2_zero_constant(self):
        assert potential(2, {"s3": 0}).u == -6 / X**2

    @pytest.mark.parametrize("k", range(0, 6))
    def test_initial_value(self, k):
        assert potential(k, zero_constants(k)).u == RatFun(-k * (k + 1)) / X**2

    def test_text(self):
        assert str(potential(1)) == "-2/x^2"

    @settings(max_examples=30, deadline=None)
    @given(small_fractions, small_fractions)
    def test_absorbed_lower_constant(self, mu, nu):
        # adding multiples of lower chain functions leaves theta, hence u, unchanged
        phis = [chain(j).poly for j in (1, 2, 3)]
        shifted = [phis[0], phis[1] + mu * phis[0], phis[2] + nu * phis[1]]
        th = wronskian(shifted)
        assert th == theta(3).poly
        assert log_second_derivative(th) == potential(3).u

    def test_constants_substitution(self):
        assert str(theta(2, {"s3": Fraction(3)}).poly) == "x^3/3 - 3"
