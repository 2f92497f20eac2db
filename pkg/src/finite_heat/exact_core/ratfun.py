"""Normalized quotients of polynomials.

A ``RatFun`` is kept in lowest terms with a denominator whose leading
coefficient (graded-lex order) is 1, so structural equality is equality of
functions.
"""

from __future__ import annotations

from fractions import Fraction


from ..errors import ZeroDenominator
from . import symbols
from .mpoly import MPoly, raw_of, raw_str, raw_subs, to_fraction
from .symbols import CTX

_ONE = CTX.constant(1)


def _coerce(value):
    if isinstance(value, RatFun):
        return value
    r = raw_of(value)
    if r is NotImplemented:
        return NotImplemented
    return RatFun._make(r, _ONE)


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, RatFun) and den == 1:
            self.num, self.den = num.num, num.den
            return
        n, d = _coerce(num), _coerce(den)
        if n is NotImplemented or d is NotImplemented:
            raise TypeError("RatFun expects polynomial-like arguments")
        # n/d with both already normalized
        q = n._div(d)
        self.num, self.den = q.num, q.den

    @classmethod
    def _make(cls, num, den):
        """Trusted constructor: ``num/den`` already in canonical form."""
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def normalize(cls, num, den):
        """Reduce ``num/den`` by their gcd and make ``den`` monic."""
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            return cls._make(num, _ONE)
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return cls._make(num, den)

    @classmethod
    def symbol(cls, name):
        return cls._make(symbols.gen(name), _ONE)

    @property
    def numerator(self) -> MPoly:
        return MPoly(self.num)

    @property
    def denominator(self) -> MPoly:
        return MPoly(self.den)

    # arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return RatFun._make(a + c, _ONE)
        if b == d:
            return RatFun.normalize(a + c, b)
        g = b.gcd(d)
        if g.is_one():
            return RatFun.normalize(a * d + c * b, b * d)
        bg, dg = b / g, d / g
        num = a * dg + c * bg
        if num.is_zero():
            return RatFun._make(num, _ONE)
        h = num.gcd(g)
        if not h.is_one():
            num = num / h
            g = g / h
        return _finish(num, bg * dg * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._make(-self.num, self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if a.is_zero() or c.is_zero():
            return RatFun._make(CTX.from_dict({}), _ONE)
        if b.is_one() and d.is_one():
            return RatFun._make(a * c, _ONE)
        g1 = a.gcd(d) if not d.is_one() else _ONE
        g2 = c.gcd(b) if not b.is_one() else _ONE
        if not g1.is_one():
            a, d = a / g1, d / g1
        if not g2.is_one():
            c, b = c / g2, b / g2
        return _finish(a * c, b * d)

    __rmul__ = __mul__

    def _div(self, o):
        if o.num.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return self * RatFun._make(o.den, o.num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._div(o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o._div(self)

    def __pow__(self, e: int):
        if e == 0:
            return RatFun._make(_ONE, _ONE)
        if e > 0:
            return RatFun._make(self.num**e, self.den**e)
        if self.num.is_zero():
            raise ZeroDenominator("negative power of zero")
        return _finish(self.den ** (-e), self.num ** (-e))

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((MPoly(self.num), MPoly(self.den)))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    # calculus
    def diff(self, name: str) -> "RatFun":
        """Partial derivative by the quotient rule.

        With ``g = gcd(D, D')``, ``(N/D)' = (N' D/g - N D'/g) / (g (D/g)^2)`` and
        only a gcd against ``g`` is needed to reduce the result.
        """
        i = symbols.INDEX[name]
        if self.den.is_one():
            return RatFun._make(self.num.derivative(i), _ONE)
        dn = self.num.derivative(i)
        dd = self.den.derivative(i)
        if dd.is_zero():
            return _finish(dn, self.den)
        g = self.den.gcd(dd)
        a = self.den / g
        b = dd / g
        num = dn * a - self.num * b
        if num.is_zero():
            return RatFun._make(num, _ONE)
        if not g.is_constant():
            h = num.gcd(g)
            if not h.is_constant():
                num = num / h
                g = g / h
        return _finish(num, g * a * a)

    def subs(self, mapping) -> "RatFun":
        """Substitute rationals, polynomials or rational functions."""
        if not mapping:
            return self
        frac = {k: v for k, v in mapping.items() if isinstance(v, RatFun) and not v.den.is_one()}
        plain = {k: (MPoly(v.num) if isinstance(v, RatFun) else v) for k, v in mapping.items() if k not in frac}
        out = RatFun.normalize(raw_subs(self.num, plain), raw_subs(self.den, plain)) if plain else self
        if frac:
            out = _compose_fractional(out, frac)
        return out

    def evaluate(self, point) -> Fraction:
        """Value at a point given as {name: rational} covering all free symbols."""
        val = self.subs(point)
        if not val.is_constant():
            raise ValueError(f"point does not fix all symbols of {self}")
        return val.constant_value()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Fraction(0)
        return to_fraction(self.num.leading_coefficient())

    def degree(self, name: str) -> int:
        """Degree of the numerator in ``name`` (denominator ignored)."""
        return MPoly(self.num).degree(name)

    def free_symbols(self) -> tuple:
        s = set(MPoly(self.num).free_symbols()) | set(MPoly(self.den).free_symbols())
        return tuple(n for n in symbols.NAMES if n in s)

    def __str__(self):
        return ratfun_str(self)

    def __repr__(self):
        return f"RatFun({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "RatFun":
        from .text import parse

        return parse(text)


def _finish(num, den):
    """Make ``den`` monic; assumes ``num/den`` already coprime."""
    if num.is_zero():
        return RatFun._make(num, _ONE)
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return RatFun._make(num, den)


def _compose_fractional(f, mapping):
    # substitution of genuine fractions: map each generator to a RatFun and
    # evaluate num and den by Horner over terms
    def ev(p):
        acc = RatFun(0)
        for exps, coeff in p.terms():
            term = RatFun._make(CTX.constant(coeff), _ONE)
            for name, e in zip(symbols.NAMES, exps):
                if e:
                    base = mapping.get(name, RatFun.symbol(name))
                    term = term * base**e
            acc = acc + term
        return acc

    return ev(f.num) / ev(f.den)


def _needs_parens_num(p) -> bool:
    terms = list(p.terms())
    if len(terms) != 1:
        return True
    return to_fraction(terms[0][1]).denominator != 1


def _needs_parens_den(p) -> bool:
    terms = list(p.terms())
    if len(terms) != 1:
        return True
    exps, coeff = terms[0]
    return coeff != 1 or sum(1 for e in exps if e) != 1


def ratfun_str(f: RatFun) -> str:
    num = raw_str(f.num)
    if f.den.is_one():
        return num
    den = raw_str(f.den)
    if _needs_parens_num(f.num):
        num = f"({num})"
    if _needs_parens_den(f.den):
        den = f"({den})"
    return f"{num}/{den}"
