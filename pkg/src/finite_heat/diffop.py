"""Differential and truncated pseudo-differential operators in d = d/dx.

Coefficients are :class:`RatFun` values.  Differentiation of coefficients is
the total x-derivative: jet symbols ``u0, u1, ...`` stand for a generic
potential ``u`` and its derivatives, so ``d(u_i) = u_{i+1}``.

A :class:`PsiDO` stores ``sum c_j d^j`` for ``floor <= j <= order``;
``floor=None`` means the operator is exact (a finite sum).  Composition uses
the generalized Leibniz rule ``d^j f = sum_l binom(j, l) f^(l) d^(j-l)``,
valid for negative ``j`` as a formal series, and tracks how far down the
product is provably correct.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FactorizationFailed, NotMultiplicationOperator, TruncationError
from .exact_core import RatFun
from .exact_core.symbols import INDEX, JETS, jet_name

_X = INDEX["x"]
_JET_INDEX = [INDEX[j] for j in JETS]


def dx(f: RatFun) -> RatFun:
    """Total derivative in x, treating ``u_i`` as the i-th derivative of u."""
    num_deg = f.num.degrees() if not f.num.is_zero() else None
    if num_deg is None:
        return f
    den_deg = f.den.degrees()
    out = f.diff("x")
    for order, idx in enumerate(_JET_INDEX):
        if num_deg[idx] or den_deg[idx]:
            nxt = RatFun.symbol(jet_name(order + 1))
            out = out + f.diff(JETS[order]) * nxt
    return out


def binomial(j: int, l: int) -> Fraction:
    """Generalized binomial coefficient, ``j`` any integer, ``l >= 0``."""
    num = 1
    for i in range(l):
        num *= j - i
    den = 1
    for i in range(2, l + 1):
        den *= i
    return Fraction(num, den)


def _as_ratfun(u):
    if isinstance(u, RatFun):
        return u
    if hasattr(u, "u"):
        return u.u
    return RatFun(u)


class PsiDO:
    __slots__ = ("coeffs", "floor")

    def __init__(self, coeffs=None, floor=None):
        clean = {}
        for j, c in (coeffs or {}).items():
            c = c if isinstance(c, RatFun) else RatFun(c)
            if c.is_zero() or (floor is not None and j < floor):
                continue
            clean[int(j)] = c
        self.coeffs = clean
        self.floor = floor

    @classmethod
    def monomial(cls, j: int, coeff=1, floor=None):
        return cls({j: coeff}, floor)

    @property
    def order(self):
        """Highest degree present (``floor - 1`` for a truncated zero)."""
        if self.coeffs:
            return max(self.coeffs)
        return None if self.floor is None else self.floor - 1

    def is_exact(self) -> bool:
        return self.floor is None

    def is_zero(self) -> bool:
        return not self.coeffs

    def has_negative(self) -> bool:
        return any(j < 0 for j in self.coeffs)

    def coefficient(self, j: int) -> RatFun:
        if self.floor is not None and j < self.floor:
            raise TruncationError(f"coefficient of d^{j} lies below the floor d^{self.floor}")
        return self.coeffs.get(j, RatFun(0))

    def _wrap(self, coeffs, floor):
        if floor is None and all(j >= 0 for j in coeffs):
            return DiffOp(coeffs)
        return PsiDO(coeffs, floor)

    def __add__(self, other):
        other = _as_op(other)
        floor = _max_floor(self.floor, other.floor)
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out[j] + c if j in out else c
        return self._wrap(out, floor)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({j: -c for j, c in self.coeffs.items()}, self.floor)

    def __sub__(self, other):
        return self + (-_as_op(other))

    def __rsub__(self, other):
        return _as_op(other) - self

    def scale(self, f):
        f = _as_ratfun(f)
        return self._wrap({j: c * f for j, c in self.coeffs.items()}, self.floor)

    def __mul__(self, other):
        if isinstance(other, PsiDO):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative operator power")
        result = DiffOp({0: RatFun(1)})
        base = self
        for _ in range(n):
            result = compose(result, base)
        return result

    def truncate(self, floor: int):
        return PsiDO(self.coeffs, _max_floor(self.floor, floor))

    def __eq__(self, other):
        if not isinstance(other, PsiDO):
            return NotImplemented
        return self.floor == other.floor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.floor, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    def agrees_with(self, other) -> bool:
        """Equality on every degree both operators know exactly."""
        floor = _max_floor(self.floor, other.floor)
        degs = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(j) == other.coefficient(j) for j in degs if floor is None or j >= floor)

    def __str__(self):
        return op_str(self)

    def __repr__(self):
        return f"{type(self).__name__}({op_str(self)!r})"


class DiffOp(PsiDO):
    """Exact operator with only non-negative powers of d."""

    __slots__ = ()

    def __init__(self, coeffs=None):
        super().__init__(coeffs, None)
        if any(j < 0 for j in self.coeffs):
            raise ValueError("DiffOp cannot hold negative powers of d")

    @classmethod
    def from_list(cls, coeffs):
        """Build from ``[c_0, c_1, ...]``."""
        return cls({j: c for j, c in enumerate(coeffs)})


D = DiffOp({1: RatFun(1)})


def _as_op(v):
    if isinstance(v, PsiDO):
        return v
    return DiffOp({0: _as_ratfun(v)})


def _max_floor(*floors):
    known = [f for f in floors if f is not None]
    return max(known) if known else None


def schrodinger(u) -> DiffOp:
    """The operator ``d^2 + u``."""
    return DiffOp({2: RatFun(1), 0: _as_ratfun(u)})


def natural_floor(P: PsiDO, Q: PsiDO):
    """Lowest degree down to which ``P o Q`` is determined by the stored terms."""
    cands = []
    if P.floor is not None and Q.order is not None:
        cands.append(P.floor + Q.order)
    if Q.floor is not None and P.order is not None:
        cands.append(P.order + Q.floor)
    return max(cands) if cands else None


class _Derivatives:
    """Lazily extended list ``f, f', f'', ...``."""

    __slots__ = ("seq",)

    def __init__(self, f):
        self.seq = [f]

    def __getitem__(self, l):
        while len(self.seq) <= l:
            self.seq.append(dx(self.seq[-1]))
        return self.seq[l]


def compose(P: PsiDO, Q: PsiDO, floor=None, only_degree=None) -> PsiDO:
    """``P o Q`` truncated at the tightest provable floor.

    ``floor`` may raise the floor (discarding extra terms) but never lower
    it; an exact composition producing an infinite series needs a floor.
    """
    nat = natural_floor(P, Q)
    if floor is not None and nat is not None and floor < nat:
        raise TruncationError(f"requested floor d^{floor} is below the provable floor d^{nat}")
    F = _max_floor(nat, floor)
    if only_degree is not None:
        F = only_degree if F is None else max(F, only_degree)
        if nat is not None and only_degree < nat:
            raise TruncationError(f"degree {only_degree} is below the provable floor d^{nat}")
    if F is None and P.has_negative() and any(not c.is_constant() for c in Q.coeffs.values()):
        raise TruncationError("exact composition with negative powers needs an explicit floor")
    ders = {i: _Derivatives(q) for i, q in Q.coeffs.items()}
    out = {}
    for j, p in P.coeffs.items():
        for i in Q.coeffs:
            l = 0
            while True:
                deg = j + i - l
                if F is not None and deg < F:
                    break
                if j >= 0 and l > j:
                    break
                if only_degree is not None and deg > only_degree:
                    l += 1
                    continue
                q = ders[i][l]
                if q.is_zero():
                    # every higher derivative vanishes too
                    break
                term = p * q * binomial(j, l)
                out[deg] = out[deg] + term if deg in out else term
                l += 1
    if isinstance(P, DiffOp) and isinstance(Q, DiffOp):
        return DiffOp(out)
    if only_degree is not None:
        return PsiDO({only_degree: out.get(only_degree, RatFun(0))}, only_degree)
    return PsiDO(out, F) if F is not None or any(j < 0 for j in out) else DiffOp(out)


def commutator(P: PsiDO, Q: PsiDO) -> PsiDO:
    return compose(P, Q) - compose(Q, P)


def adjoint(P: PsiDO) -> PsiDO:
    """Formal adjoint ``sum (-d)^j o c_j``."""
    if P.floor is None and P.has_negative():
        raise TruncationError("adjoint of an exact operator with negative powers needs a floor")
    acc = PsiDO({}, P.floor) if P.floor is not None else DiffOp({})
    for j, c in P.coeffs.items():
        term = compose(PsiDO.monomial(j), DiffOp({0: c}), floor=P.floor)
        if j % 2:
            term = -term
        acc = acc + term
    return acc


def plus_part(P: PsiDO) -> DiffOp:
    if P.floor is not None and P.floor > 0:
        raise TruncationError(f"differential part needs coefficients down to d^0, floor is d^{P.floor}")
    return DiffOp({j: c for j, c in P.coeffs.items() if j >= 0})


def minus_part(P: PsiDO) -> PsiDO:
    if P.floor is not None and P.floor > 0:
        raise TruncationError(f"negative part is not known, floor is d^{P.floor}")
    return PsiDO({j: c for j, c in P.coeffs.items() if j < 0}, P.floor)


def sqrt_L(u, depth: int) -> PsiDO:
    """``S = d + a_1 d^-1 + ... + a_depth d^-depth`` with ``S o S = d^2 + u``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    u = _as_ratfun(u)
    coeffs = {1: RatFun(1)}
    for i in range(1, depth + 1):
        trial = PsiDO(coeffs, -i)
        known = compose(trial, trial, only_degree=1 - i).coefficient(1 - i)
        target = u if i == 1 else RatFun(0)
        coeffs[-i] = (target - known) * Fraction(1, 2)
    return PsiDO(coeffs, -depth)


def fractional_power(u, k: int, depth: int, floor=None) -> PsiDO:
    """``L^(k/2)`` as the k-th power of :func:`sqrt_L`.

    With ``floor`` given, intermediate powers are cut to the degrees that can
    still reach ``d^floor`` in the final product.
    """
    S = sqrt_L(u, depth)
    if floor is None:
        P = S
        for _ in range(k - 1):
            P = compose(P, S)
        return P
    P = S.truncate(floor - (k - 1)) if S.floor < floor - (k - 1) else S
    for i in range(2, k + 1):
        want = floor - (k - i)
        nat = natural_floor(P, S)
        P = compose(P, S, floor=max(want, nat) if nat is not None else want)
    return P


def kdv_flow(u, k: int, depth=None) -> RatFun:
    """The multiplication operator ``[(L^(k/2))_+, L]`` for odd ``k``."""
    if k % 2 == 0 or k < 1:
        raise ValueError(f"flow index must be a positive odd integer, got {k}")
    depth = k if depth is None else depth
    if depth < k - 1:
        raise TruncationError(f"depth {depth} cannot resolve (L^({k}/2))_+; need >= {k - 1}")
    u = _as_ratfun(u)
    L = schrodinger(u)
    P = plus_part(fractional_power(u, k, depth, floor=0))
    C = commutator(P, L)
    high = {j: c for j, c in C.coeffs.items() if j > 0}
    if high:
        raise NotMultiplicationOperator(f"[(L^({k}/2))_+, L] has higher-order terms: {DiffOp(high)}")
    return C.coefficient(0)


@dataclass(frozen=True)
class BCPair:
    cell: int
    L: DiffOp
    M: DiffOp
    depth: int


def bc_pair(k: int, depth=None, u=None) -> BCPair:
    """Commuting pair ``L = d^2 + u_k``, ``M = (L^((2k+1)/2))_+`` with ``M^2 = L^(2k+1)``."""
    from .adler_moser import potential

    need = 2 * k + 2
    depth = need if depth is None else depth
    if depth < need:
        raise TruncationError(f"bc_pair({k}) needs depth >= {need}, got {depth}")
    if u is None:
        u = potential(k).u
    u = _as_ratfun(u)
    L = schrodinger(u)
    Sp = fractional_power(u, 2 * k + 1, depth, floor=-1)
    if Sp.floor is not None and Sp.floor > -1:
        raise TruncationError(f"S^{2 * k + 1} only known down to d^{Sp.floor}")
    neg = minus_part(Sp)
    if not neg.is_zero():
        raise FactorizationFailed(f"L^({2 * k + 1}/2) is not differential", residual=neg)
    M = plus_part(Sp)
    resid = compose(M, M) - L ** (2 * k + 1)
    if not resid.is_zero():
        raise FactorizationFailed(f"M^2 != L^{2 * k + 1}", residual=resid)
    comm = commutator(M, L)
    if not comm.is_zero():
        raise FactorizationFailed("[M, L] != 0", residual=comm)
    return BCPair(k, L, M, depth)


def _coef_str(c: RatFun) -> str:
    return f"({c})"


def op_str(P: PsiDO) -> str:
    if not P.coeffs:
        body = "0"
    else:
        parts = []
        for j in sorted(P.coeffs, reverse=True):
            c = P.coeffs[j]
            mono = "" if j == 0 else ("d" if j == 1 else f"d^{j}")
            if not mono:
                parts.append(_coef_str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{_coef_str(c)}*{mono}")
        body = " + ".join(parts)
    if P.floor is not None:
        body += f" + O(d^{P.floor - 1})"
    return body
