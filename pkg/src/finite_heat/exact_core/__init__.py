"""Exact arithmetic substrate: rationals, polynomials, rational functions, series."""

from .integrate import hermite_reduce, rational_integrate
from .laurent import LaurentSeries, exp_series
from .mpoly import MPoly, Rational, symbol
from .ratfun import RatFun
from .symbols import CONSTANTS, JETS, NAMES
from .text import parse, parse_rational

__all__ = [
    "CONSTANTS",
    "JETS",
    "LaurentSeries",
    "MPoly",
    "NAMES",
    "RatFun",
    "Rational",
    "diff",
    "exp_series",
    "hermite_reduce",
    "parse",
    "parse_rational",
    "poly_arith",
    "ratfun_normalize",
    "rational_integrate",
    "symbol",
]


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def ratfun_normalize(num, den) -> RatFun:
    return RatFun(num, den)


def diff(f, name: str) -> RatFun:
    return RatFun(f).diff(name)
