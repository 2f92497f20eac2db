"""Sparse multivariate polynomials over the rationals.

The ring operations and gcd are delegated to FLINT's ``fmpq_mpoly``; this
wrapper fixes the symbol table, gives value semantics (hashing, equality)
and the canonical text format.
"""

from __future__ import annotations

from fractions import Fraction

import flint

from . import symbols
from .symbols import CTX, NAMES


Rational = Fraction


def to_fmpq(value) -> flint.fmpq:
    if isinstance(value, flint.fmpq):
        return value
    if isinstance(value, int):
        return flint.fmpq(value)
    value = Fraction(value)
    return flint.fmpq(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def raw_of(value):
    """Coerce ints, Fractions and MPoly to a raw flint polynomial."""
    if isinstance(value, MPoly):
        return value.raw
    if isinstance(value, flint.fmpq_mpoly):
        return value
    if isinstance(value, (int, Fraction, flint.fmpq)):
        return CTX.constant(to_fmpq(value))
    return NotImplemented


def raw_subs(p, mapping):
    """Substitute symbols in a raw polynomial.

    ``mapping`` sends symbol names to rationals or polynomials.  Rational
    values go through FLINT's evaluation, polynomial values through
    composition.
    """
    if not mapping:
        return p
    numeric = {}
    symbolic = {}
    for name, value in mapping.items():
        if name not in symbols.INDEX:
            raise KeyError(f"unknown symbol {name!r}")
        r = raw_of(value)
        if r is NotImplemented:
            raise TypeError(f"cannot substitute {type(value).__name__}")
        if r.is_constant():
            numeric[name] = r.leading_coefficient() if not r.is_zero() else flint.fmpq(0)
        else:
            symbolic[name] = r
    if numeric:
        p = p.subs(numeric)
    if symbolic:
        gens = list(CTX.gens())
        for name, r in symbolic.items():
            gens[symbols.INDEX[name]] = r
        p = p.compose(*gens, ctx=CTX)
    return p


def _monomial_str(exps) -> str:
    parts = []
    for name, e in zip(NAMES, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_str(coeff: Fraction, exps) -> str:
    """Unsigned text of one term; the sign is handled by the caller."""
    a, b = abs(coeff.numerator), coeff.denominator
    mono = _monomial_str(exps)
    if not mono:
        return f"{a}/{b}" if b != 1 else f"{a}"
    head = mono if a == 1 else f"{a}*{mono}"
    return head if b == 1 else f"{head}/{b}"


def raw_str(p) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (exps, coeff) in enumerate(p.terms()):
        c = to_fraction(coeff)
        body = _term_str(c, exps)
        if k == 0:
            out.append("-" + body if c < 0 else body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class MPoly:
    """Immutable polynomial over the fixed symbol table."""

    __slots__ = ("raw",)

    def __init__(self, value=0):
        r = raw_of(value)
        if r is NotImplemented:
            raise TypeError(f"cannot build a polynomial from {type(value).__name__}")
        self.raw = r

    @classmethod
    def symbol(cls, name: str) -> "MPoly":
        return cls(symbols.gen(name))

    @classmethod
    def from_terms(cls, terms) -> "MPoly":
        """Build from a mapping exponent-vector -> rational.

        Exponent vectors may be shorter than the symbol table; they are padded
        with zeros.
        """
        n = len(NAMES)
        d = {}
        for exps, coeff in terms.items():
            exps = tuple(exps) + (0,) * (n - len(exps))
            if coeff:
                d[exps] = to_fmpq(coeff)
        return cls(CTX.from_dict(d))

    def terms(self) -> dict:
        return {tuple(e): to_fraction(c) for e, c in self.raw.terms()}

    # ring structure
    def __add__(self, other):
        r = raw_of(other)
        return NotImplemented if r is NotImplemented else MPoly(self.raw + r)

    __radd__ = __add__

    def __sub__(self, other):
        r = raw_of(other)
        return NotImplemented if r is NotImplemented else MPoly(self.raw - r)

    def __rsub__(self, other):
        r = raw_of(other)
        return NotImplemented if r is NotImplemented else MPoly(r - self.raw)

    def __mul__(self, other):
        r = raw_of(other)
        return NotImplemented if r is NotImplemented else MPoly(self.raw * r)

    __rmul__ = __mul__

    def __neg__(self):
        return MPoly(-self.raw)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        return MPoly(self.raw**e)

    def __truediv__(self, other):
        from .ratfun import RatFun

        return RatFun(self) / other

    def __rtruediv__(self, other):
        from .ratfun import RatFun

        return RatFun(other) / self

    def __eq__(self, other):
        r = raw_of(other)
        if r is NotImplemented:
            return NotImplemented
        return self.raw == r

    def __hash__(self):
        return hash(tuple((tuple(e), int(c.p), int(c.q)) for e, c in self.raw.terms()))

    def __bool__(self):
        return not self.raw.is_zero()

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    # calculus and structure
    def diff(self, name: str) -> "MPoly":
        return MPoly(self.raw.derivative(symbols.INDEX[name]))

    def degree(self, name: str) -> int:
        if self.raw.is_zero():
            return -1
        return self.raw.degrees()[symbols.INDEX[name]]

    def total_degree(self) -> int:
        return -1 if self.raw.is_zero() else self.raw.total_degree()

    def leading_coefficient(self) -> Fraction:
        return to_fraction(self.raw.leading_coefficient())

    def gcd(self, other: "MPoly") -> "MPoly":
        return MPoly(self.raw.gcd(raw_of(other)))

    def subs(self, mapping) -> "MPoly":
        return MPoly(raw_subs(self.raw, mapping))

    def free_symbols(self) -> tuple:
        if self.raw.is_zero():
            return ()
        return tuple(n for n, d in zip(NAMES, self.raw.degrees()) if d > 0)

    def __str__(self):
        return raw_str(self.raw)

    def __repr__(self):
        return f"MPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        from .text import parse

        value = parse(text)
        if not value.den.is_one():
            raise ValueError(f"{text!r} is not a polynomial")
        return MPoly(value.num)


def symbol(name: str) -> MPoly:
    return MPoly.symbol(name)
