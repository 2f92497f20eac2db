"""Acceptance criteria.  Every comparison is exact; the terminal summary
prints one PASS/FAIL line per criterion."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finite_heat.adler_moser import potential
from finite_heat.diffop import (
    DiffOp,
    PsiDO,
    adjoint,
    bc_pair,
    compose,
    kdv_flow,
    schrodinger,
    sqrt_L,
)
from finite_heat.exact_core import RatFun
from finite_heat.hadamard import (
    check_symmetry,
    check_transport,
    diagonal_identity_check,
    hadamard_table,
    swap_xy,
    transport_residual,
    verify_finite_kernel,
)
from finite_heat.wave import gn_laguerre_series, gn_series, hadamard_residue, lemma_check, odd_recursion_residual
from strategies import diffops, mpolys, nonzero_fractions, psidos, ratfuns, x_polys

X = RatFun.symbol("x")
Y = RatFun.symbol("y")
U0 = RatFun.symbol("u0")

PROPS = settings(max_examples=100, deadline=None)


def _table(k, N, _cache={}):
    if (k, N) not in _cache:
        _cache[k, N] = hadamard_table(potential(k), N)
    return _cache[k, N]


@pytest.mark.acceptance(1, "termination index k+1 for cells 0..3")
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_termination_index(k):
    table = _table(k, k + 2)
    assert table.termination_index == k + 1
    assert table[k + 1].is_zero() and table[k + 2].is_zero()
    if k >= 1:
        assert not table[k].is_zero()


@pytest.mark.acceptance(2, "Burchnall-Chaundy pair M^2 = L^(2k+1), [M, L] = 0 for k = 1..3")
@pytest.mark.parametrize("k", [1, 2, 3])
def test_burchnall_chaundy(k):
    pair = bc_pair(k)
    assert compose(pair.M, pair.M) == pair.L ** (2 * k + 1)
    assert compose(pair.M, pair.L) == compose(pair.L, pair.M)
    assert pair.M.order == 2 * k + 1
    if k == 1:
        assert pair.M == DiffOp({3: 1, 1: -3 / X**2, 0: 3 / X**3})


@pytest.mark.acceptance(3, "contour residue formula equals transport H_n for k <= 3, n <= 4")
@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cross_method(k, n):
    assert hadamard_residue(k, n) == _table(k, 4)[n]


@pytest.mark.acceptance(4, "g_n Taylor coefficients: odd vanishing, recursion, Laguerre form for n = 1..6")
@pytest.mark.parametrize("n", range(1, 7))
def test_gn_lemma(n):
    M = 2 * n + 6
    g = gn_series(n, M)
    assert all(g[2 * j - 1] == 0 for j in range(1, n))
    assert g[2 * n - 1] != 0
    assert all(r == 0 for r in odd_recursion_residual(g))
    assert g.beta == gn_laguerre_series(n, M).beta
    assert lemma_check(n, M).passed


@pytest.mark.acceptance(5, "diagonal identity, generic u at k = 1, 2 and cells 1..3 at k <= 3")
@pytest.mark.parametrize("k", [1, 2])
def test_diagonal_generic(k):
    assert diagonal_identity_check(U0, k).passed


@pytest.mark.acceptance(5, "diagonal identity, generic u at k = 1, 2 and cells 1..3 at k <= 3")
@pytest.mark.parametrize("cell", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_diagonal_cells(cell, k):
    assert diagonal_identity_check(potential(cell), k, table=_table(cell, 4)).passed


@pytest.mark.acceptance(6, "flow j vanishes iff j >= 2k+1, cells 1..3")
@pytest.mark.parametrize("k", [1, 2, 3])
def test_flow_sharpness(k):
    u = potential(k).u
    for j in range(3, 2 * k + 1, 2):
        assert not kdv_flow(u, j).is_zero(), j
    for j in range(2 * k + 1, 2 * k + 4, 2):
        assert kdv_flow(u, j).is_zero(), j


@pytest.mark.acceptance(7, "finite kernel solves the heat equation exactly, cells 0..2")
@pytest.mark.parametrize("k", [0, 1, 2])
def test_finite_kernel(k):
    assert verify_finite_kernel(_table(k, k + 2)).passed


@pytest.mark.acceptance(8, "constant potential gives H_n = c^n/n!, n <= 5")
def test_constant_potential():
    c = RatFun.symbol("c")
    table = hadamard_table(c, 5)
    assert [table[n] for n in range(6)] == [c**n * Fraction(1, factorial(n)) for n in range(6)]


# criterion 9: property suites

CRIT9 = pytest.mark.acceptance(9, "randomized property suites (100 examples each)")


@CRIT9
@PROPS
@given(ratfuns(), ratfuns(), ratfuns())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a * 1 == a


@CRIT9
@PROPS
@given(mpolys(), mpolys(), mpolys())
def test_polynomial_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@CRIT9
@PROPS
@given(diffops(), diffops())
def test_adjoint_antihomomorphism(P, Q):
    assert adjoint(compose(P, Q)) == compose(adjoint(Q), adjoint(P))
    assert adjoint(adjoint(P)) == P


@CRIT9
@PROPS
@given(psidos(), psidos(), diffops())
def test_compose_associative(P, Q, R):
    left = compose(compose(P, Q), R)
    right = compose(P, compose(Q, R))
    assert left.agrees_with(right)


@CRIT9
@PROPS
@given(x_polys())
def test_sqrt_self_consistent(u):
    S = sqrt_L(u, 5)
    SS = compose(S, S)
    assert SS.agrees_with(PsiDO(schrodinger(u).coeffs, SS.floor))
    assert SS.floor == -4


@CRIT9
@PROPS
@given(x_polys(max_degree=3))
def test_transport_polynomial_potentials(u):
    table = hadamard_table(u, 3)
    for n in range(1, 4):
        assert transport_residual(u, table[n - 1], table[n], n).is_zero()
        assert table[n] == swap_xy(table[n])


@CRIT9
@PROPS
@given(nonzero_fractions)
def test_transport_cell2_random_constants(s3):
    table = hadamard_table(potential(2, {"s3": s3}), 4)
    assert check_transport(table).passed
    assert check_symmetry(table).passed
    assert table.termination_index == 3


@CRIT9
@settings(max_examples=100, deadline=None)
@given(st.lists(nonzero_fractions, min_size=2, max_size=2))
def test_transport_cell3_random_constants(values):
    u = potential(3, {"s3": values[0], "s5": values[1]})
    table = hadamard_table(u, 4)
    assert check_transport(table).passed
    assert check_symmetry(table).passed
    assert table.termination_index == 4
