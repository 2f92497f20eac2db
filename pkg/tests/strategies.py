"""Hypothesis strategies for small exact objects."""

from fractions import Fraction

from hypothesis import strategies as st

from finite_heat.diffop import DiffOp, PsiDO
from finite_heat.exact_core import MPoly, RatFun

small_fractions = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
nonzero_fractions = small_fractions.filter(lambda q: q != 0)


def mpolys(names=("x", "y", "s3"), max_terms=4, max_exp=2):
    term = st.tuples(st.tuples(*[st.integers(0, max_exp) for _ in names]), small_fractions)

    def build(terms):
        p = MPoly(0)
        for exps, c in terms:
            mono = MPoly(c)
            for name, e in zip(names, exps):
                mono = mono * MPoly.symbol(name) ** e
            p = p + mono
        return p

    return st.lists(term, max_size=max_terms).map(build)


def nonzero_mpolys(**kw):
    return mpolys(**kw).filter(lambda p: not p.is_zero())


def ratfuns(names=("x", "y", "s3")):
    return st.builds(lambda n, d: RatFun(n, d), mpolys(names), nonzero_mpolys(names=names, max_terms=3))


def x_polys(max_degree=3):
    return st.lists(small_fractions, min_size=1, max_size=max_degree + 1).map(
        lambda cs: RatFun(sum((MPoly(c) * MPoly.symbol("x") ** i for i, c in enumerate(cs)), MPoly(0)))
    )


def diffops(max_order=2, max_degree=2):
    return st.lists(x_polys(max_degree), min_size=1, max_size=max_order + 1).map(
        lambda cs: DiffOp({j: c for j, c in enumerate(cs)})
    )


def psidos(floor=-3, max_degree=2):
    return st.lists(x_polys(max_degree), min_size=1, max_size=2 - floor).map(
        lambda cs: PsiDO({1 - j: c for j, c in enumerate(cs)}, floor)
    )


points = st.fixed_dictionaries({"x": nonzero_fractions, "y": nonzero_fractions, "s3": nonzero_fractions})

wide_fractions = st.builds(Fraction, st.integers(-97, 97), st.integers(1, 31)).filter(lambda q: q != 0)
wide_points = st.fixed_dictionaries({"x": wide_fractions, "y": wide_fractions, "s3": wide_fractions})
