"""Rational antiderivatives by Hermite reduction.

The integrand is viewed as a univariate rational function in one symbol over
the field of rational functions in all remaining symbols.  Hermite reduction
splits it into the derivative of a rational function plus a proper part with
squarefree denominator; the antiderivative is rational exactly when that
proper part vanishes.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import LogObstruction
from . import symbols
from .ratfun import RatFun, _ONE
from .symbols import CTX


class UPoly:
    """Dense univariate polynomial with RatFun coefficients (low degree first)."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.c = c

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lc(self):
        return self.c[-1]

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        z = RatFun(0)
        return UPoly(
            [(self.c[i] if i < len(self.c) else z) + (o.c[i] if i < len(o.c) else z) for i in range(n)]
        )

    def __neg__(self):
        return UPoly([-a for a in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, RatFun):
            return UPoly([a * o for a in self.c])
        if self.is_zero() or o.is_zero():
            return UPoly([])
        out = [RatFun(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j, b in enumerate(o.c):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UPoly(out)

    def deriv(self):
        return UPoly([a * i for i, a in enumerate(self.c)][1:])

    def divmod(self, o):
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dq = len(r) - len(o.c)
        if dq < 0:
            return UPoly([]), self
        q = [RatFun(0)] * (dq + 1)
        inv = 1 / o.lc()
        for k in range(dq, -1, -1):
            t = r[k + len(o.c) - 1] * inv
            q[k] = t
            if t.is_zero():
                continue
            for j, b in enumerate(o.c):
                r[k + j] = r[k + j] - t * b
        return UPoly(q), UPoly(r[: len(o.c) - 1])

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def __mod__(self, o):
        return self.divmod(o)[1]

    def to_ratfun(self, name):
        xv = RatFun.symbol(name)
        acc = RatFun(0)
        for a in reversed(self.c):
            acc = acc * xv + a
        return acc


def _ext_gcd(a, b):
    """(s, t, g) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = UPoly([RatFun(1)]), UPoly([])
    t0, t1 = UPoly([]), UPoly([RatFun(1)])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc()
    return s0 * inv, t0 * inv, r0 * inv


def _solve_bezout(a, b, c):
    """(s, t) with s*a + t*b = c and deg s < deg b; requires gcd(a, b) = 1."""
    s, t, g = _ext_gcd(a, b)
    if g.degree != 0:
        raise ArithmeticError("Bezout system with non-coprime moduli")
    q, r = c.divmod(g)
    s = (s * q) % b
    t = (c - s * a) // b
    return s, t


def to_upoly(raw, index):
    """Split a raw polynomial into x-free coefficients of powers of generator ``index``."""
    by_deg = {}
    for exps, coeff in raw.terms():
        e = exps[index]
        if e:
            exps = tuple(exps[:index]) + (0,) + tuple(exps[index + 1 :])
        by_deg.setdefault(e, {})[tuple(exps)] = coeff
    if not by_deg:
        return UPoly([])
    top = max(by_deg)
    return UPoly([RatFun._make(CTX.from_dict(by_deg[d]), _ONE) if d in by_deg else RatFun(0) for d in range(top + 1)])


def _squarefree_parts(raw_den, index):
    """x-free content and {multiplicity: squarefree x-dependent product}."""
    content, factors = raw_den.factor_squarefree()
    const = CTX.constant(content)
    parts = {}
    for fac, mult in factors:
        if fac.degrees()[index] == 0:
            const = const * fac**mult
        else:
            parts[mult] = parts[mult] * fac if mult in parts else fac
    return const, parts


def hermite_reduce(f: RatFun, name: str):
    """Return ``(g, h)`` with ``f = dg/dname + h`` and ``h`` having squarefree denominator."""
    index = symbols.INDEX[name]
    const, parts = _squarefree_parts(f.den, index)
    scale = RatFun._make(_ONE, _ONE) / RatFun._make(const, _ONE)
    A = to_upoly(f.num, index) * scale
    D_parts = {m: to_upoly(p, index) for m, p in parts.items()}
    one = UPoly([RatFun(1)])
    D = one
    for m, p in D_parts.items():
        for _ in range(m):
            D = D * p
    g = RatFun(0)
    for i in sorted(D_parts):
        if i < 2:
            continue
        V = D_parts[i]
        Vi = one
        for _ in range(i):
            Vi = Vi * V
        U = D // Vi
        dV = V.deriv()
        UdV = U * dV
        for j in range(i - 1, 0, -1):
            B, C = _solve_bezout(UdV, V, A * RatFun(Fraction(-1, j)))
            Vj = one
            for _ in range(j):
                Vj = Vj * V
            g = g + B.to_ratfun(name) / Vj.to_ratfun(name)
            A = C * RatFun(-j) - U * B.deriv()
        D = U * V
    return g, (A, D)


def rational_integrate(f, name: str = "x") -> RatFun:
    """Rational antiderivative of ``f`` in ``name`` with zero integration constant.

    Raises :class:`LogObstruction` when the antiderivative needs logarithms.
    """
    f = RatFun(f)
    if f.is_zero():
        return f
    index = symbols.INDEX[name]
    if f.den.degrees()[index] == 0:
        return RatFun._make(f.num.integral(index), f.den)
    g, (A, D) = hermite_reduce(f, name)
    Q, R = A.divmod(D)
    if not R.is_zero():
        raise LogObstruction(
            f"antiderivative of {f} in {name} is not rational",
            residual=R.to_ratfun(name) / D.to_ratfun(name),
        )
    poly = UPoly([RatFun(0)] + [c * RatFun(Fraction(1, k + 1)) for k, c in enumerate(Q.c)])
    return g + poly.to_ratfun(name)
