"""Adler-Moser polynomials and the rational KdV potentials built from them.

The chain ``phi_1 = x``, ``phi_j'' = phi_{j-1}`` is integrated with zero
constants and one new free constant ``s_{2j-1}`` added at each level::

    phi_2 = x^3/6 + s3,   phi_3 = x^5/120 + s3*x^2/2 + s5, ...

``theta_k`` is the Wronskian of ``phi_1, ..., phi_k`` and the potential is
``u_k = 2 (log theta_k)''``.  With this normalization ``theta_2 = x^3/3 - s3``.
The monic rescaling of ``theta_k`` satisfies the classical
``T_{k+1}' T_{k-1} - T_{k+1} T_{k-1}' = (2k+1) T_k^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exact_core import MPoly, RatFun
from .exact_core.symbols import INDEX, constant_name, gen

K_MAX = 5

_X = INDEX["x"]


@dataclass(frozen=True)
class ChainFunction:
    index: int
    poly: MPoly


@dataclass(frozen=True)
class ThetaPoly:
    cell: int
    poly: MPoly

    @property
    def degree(self) -> int:
        return self.poly.degree("x")

    def monic(self) -> MPoly:
        """Rescaled so the coefficient of the top power of x is 1."""
        return self.poly * (1 / self.poly.leading_coefficient())


@dataclass(frozen=True)
class Potential:
    cell: int
    u: RatFun
    constants: dict = field(default_factory=dict, compare=False)

    def __str__(self):
        return str(self.u)


def _subs(p: MPoly, constants) -> MPoly:
    return p.subs(constants) if constants else p


@lru_cache(maxsize=None)
def _chain_raw(k: int):
    if k < 1:
        raise ValueError(f"chain index must be >= 1, got {k}")
    if k == 1:
        return gen("x")
    prev = _chain_raw(k - 1)
    return prev.integral(_X).integral(_X) + gen(constant_name(k))


def chain(k: int, constants=None) -> ChainFunction:
    """The level-``k`` chain function, optionally with constants substituted."""
    return ChainFunction(k, _subs(MPoly(_chain_raw(k)), constants))


def wronskian_matrix(funcs):
    n = len(funcs)
    rows = []
    cur = [f.raw if isinstance(f, MPoly) else f for f in funcs]
    for _ in range(n):
        rows.append(list(cur))
        cur = [f.derivative(_X) for f in cur]
    return rows


def bareiss_det(matrix):
    """Fraction-free determinant over raw polynomials."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return MPoly(1).raw
    sign = 1
    prev = MPoly(1).raw
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly(0).raw
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) / prev
        prev = piv
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def wronskian(funcs) -> MPoly:
    return MPoly(bareiss_det(wronskian_matrix(funcs)))


@lru_cache(maxsize=None)
def _theta_raw(k: int):
    return wronskian([_chain_raw(j) for j in range(1, k + 1)]).raw


def theta(k: int, constants=None) -> ThetaPoly:
    if k < 0:
        raise ValueError(f"cell index must be >= 0, got {k}")
    return ThetaPoly(k, _subs(MPoly(_theta_raw(k)), constants))


def log_second_derivative(p: MPoly) -> RatFun:
    """``2 (log p)''`` in x as a rational function."""
    d1 = p.diff("x")
    d2 = d1.diff("x")
    return RatFun(2 * (d2 * p - d1 * d1), p * p)


def potential(k: int, constants=None) -> Potential:
    th = theta(k, constants)
    return Potential(k, log_second_derivative(th.poly), dict(constants or {}))


def recursion_residual(k: int, constants=None) -> MPoly:
    """``T_{k+1}' T_{k-1} - T_{k+1} T_{k-1}' - (2k+1) T_k^2`` for the monic thetas."""
    if k < 1:
        raise ValueError("recursion needs k >= 1")
    lo, mid, hi = (theta(j, constants).monic() for j in (k - 1, k, k + 1))
    return hi.diff("x") * lo - hi * lo.diff("x") - (2 * k + 1) * mid * mid


def free_constants(k: int) -> tuple:
    """Names of the chain constants theta_k depends on."""
    return tuple(constant_name(j) for j in range(2, k + 1))
