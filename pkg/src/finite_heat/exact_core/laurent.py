"""Truncated Laurent series in one indeterminate with RatFun coefficients.

A series stores the coefficients of degrees ``floor <= d <= top_degree``.
``floor=None`` marks an exact (finite) Laurent polynomial.  Every
arithmetic result carries the tightest floor that the operands justify, and
asking for a coefficient below it raises :class:`TruncationError`.
"""

from __future__ import annotations

from math import factorial

from ..errors import TruncationError
from .ratfun import RatFun


def _max_floor(*floors):
    known = [f for f in floors if f is not None]
    return max(known) if known else None


class LaurentSeries:
    __slots__ = ("coeffs", "floor", "var")

    def __init__(self, coeffs=None, floor=None, var="z"):
        clean = {}
        for d, c in (coeffs or {}).items():
            c = RatFun(c) if not isinstance(c, RatFun) else c
            if c.is_zero() or (floor is not None and d < floor):
                continue
            clean[int(d)] = c
        self.coeffs = clean
        self.floor = floor
        self.var = var

    @property
    def top_degree(self):
        if self.coeffs:
            return max(self.coeffs)
        return None if self.floor is None else self.floor - 1

    @property
    def low_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def is_exact(self) -> bool:
        return self.floor is None

    def coefficient(self, d: int) -> RatFun:
        if self.floor is not None and d < self.floor:
            raise TruncationError(
                f"coefficient of {self.var}^{d} requested but series is only known down to {self.var}^{self.floor}"
            )
        return self.coeffs.get(d, RatFun(0))

    def truncate(self, floor: int) -> "LaurentSeries":
        new_floor = _max_floor(self.floor, floor)
        return LaurentSeries(self.coeffs, new_floor, self.var)

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries({0: RatFun(other)}, None, self.var)
        if other.var != self.var:
            raise ValueError(f"series in {self.var} and {other.var} cannot be combined")
        return other

    def __add__(self, other):
        other = self._check(other)
        floor = _max_floor(self.floor, other.floor)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out[d] + c if d in out else c
        return LaurentSeries(out, floor, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({d: -c for d, c in self.coeffs.items()}, self.floor, self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def scale(self, factor) -> "LaurentSeries":
        factor = RatFun(factor)
        return LaurentSeries({d: c * factor for d, c in self.coeffs.items()}, self.floor, self.var)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._check(other)
        candidates = []
        if self.floor is not None and other.top_degree is not None:
            candidates.append(self.floor + other.top_degree)
        if other.floor is not None and self.top_degree is not None:
            candidates.append(self.top_degree + other.floor)
        # an exact zero operand leaves no candidates and gives an exact zero
        floor = max(candidates) if candidates else None
        out = {}
        for da, ca in self.coeffs.items():
            for db, cb in other.coeffs.items():
                d = da + db
                if floor is not None and d < floor:
                    continue
                term = ca * cb
                out[d] = out[d] + term if d in out else term
        return LaurentSeries(out, floor, self.var)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by ``var**m``."""
        floor = None if self.floor is None else self.floor + m
        return LaurentSeries({d + m: c for d, c in self.coeffs.items()}, floor, self.var)

    def reflect(self) -> "LaurentSeries":
        """Substitute ``var -> -var``."""
        return LaurentSeries({d: (c if d % 2 == 0 else -c) for d, c in self.coeffs.items()}, self.floor, self.var)

    def map_coefficients(self, fn) -> "LaurentSeries":
        return LaurentSeries({d: fn(c) for d, c in self.coeffs.items()}, self.floor, self.var)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.var == other.var and self.floor == other.floor and self.coeffs == other.coeffs

    def agrees_with(self, other) -> bool:
        """Equality on the degrees both operands know."""
        floor = _max_floor(self.floor, other.floor)
        degs = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(d) == other.coefficient(d) for d in degs if floor is None or d >= floor)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"({c})*{self.var}^{d}" for d, c in sorted(self.coeffs.items(), reverse=True))
        if self.floor is not None:
            body += f" + O({self.var}^{self.floor - 1})"
        return body

    def __repr__(self):
        return f"LaurentSeries({self})"


def exp_series(a, floor: int, var="w") -> LaurentSeries:
    """``exp(a / var)`` expanded in negative powers of ``var`` down to ``floor``.

    The residue computation works in ``w = 1/z`` so that power series in ``z``
    become series truncated from below.
    """
    if floor > 0:
        raise ValueError("floor must be <= 0")
    a = RatFun(a)
    coeffs = {}
    power = RatFun(1)
    for j in range(0, -floor + 1):
        coeffs[-j] = power / factorial(j)
        power = power * a
    return LaurentSeries(coeffs, floor, var)
