"""Baker functions of the rational cells, the bilinear identity, and the
residue formula for Hadamard coefficients.

``Psi(x, z) = body(x, z) * exp(x z)`` with ``body`` a polynomial in ``1/z``
whose constant term is 1.  For cell ``k`` it is the Wronskian quotient
``Wr(phi_1, ..., phi_k, e^{xz}) / (z^k Wr(phi_1, ..., phi_k))``.

Contour integrals over the unit circle are coefficient extractions:
``oint f dz = 2 pi i [z^-1] f``.  Products of a polynomial in ``1/z`` with a
power series in ``z`` are carried out in ``w = 1/z``, where the power series
become Laurent series truncated from below and ``[z^-1] = [w^1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .adler_moser import _chain_raw, bareiss_det
from .diffop import PsiDO, binomial, dx, schrodinger
from .errors import EigenCheckFailed, NonRationalResult, ResidueNonzero, TruncationError
from .exact_core import LaurentSeries, MPoly, RatFun, exp_series
from .exact_core.mpoly import raw_subs
from .exact_core.symbols import INDEX

_X = INDEX["x"]
X = RatFun.symbol("x")
Y = RatFun.symbol("y")
XI = X - Y


@dataclass(frozen=True)
class WaveSeries:
    cell: int
    body: LaurentSeries  # exact, in z, degrees -cell..0
    sign: int = 1  # Psi = body * exp(sign * x * z)

    def coefficient(self, i: int) -> RatFun:
        """``psi_i`` in ``1 + sum psi_i z^-i``."""
        return self.body.coefficient(-i)


def _subs_constants(f: RatFun, constants):
    return f.subs(constants) if constants else f


def baker(k: int, constants=None, certify: bool = True) -> WaveSeries:
    if k < 0:
        raise ValueError("cell index must be >= 0")
    phis = [_chain_raw(j) for j in range(1, k + 1)]
    if constants:
        phis = [raw_subs(p, constants) for p in phis]
    rows = []
    cur = list(phis)
    for _ in range(k + 1):
        rows.append(cur)
        cur = [p.derivative(_X) for p in cur]
    th = MPoly(bareiss_det(rows[:k]))
    if th.is_zero():
        raise ValueError(f"theta_{k} vanishes identically")
    coeffs = {}
    for i in range(k + 1):
        minor = [r for r_i, r in enumerate(rows) if r_i != i]
        cof = MPoly(bareiss_det(minor)) * (-1) ** (i + k)
        coeffs[i - k] = RatFun(cof, th)
    body = LaurentSeries(coeffs, None, "z")
    if body.coefficient(0) != 1:
        raise EigenCheckFailed(f"body of Psi_{k} does not start with 1")
    psi = WaveSeries(k, body)
    if certify:
        u = theta_potential(th)
        check_eigen(psi, schrodinger(u), 2)
    return psi


def theta_potential(th: MPoly) -> RatFun:
    from .adler_moser import log_second_derivative

    return log_second_derivative(th)


def apply_to_wave(P: PsiDO, psi: WaveSeries) -> LaurentSeries:
    """``exp(-s x z) P(body * exp(s x z))`` as a Laurent polynomial in z."""
    if not P.is_exact() or P.has_negative():
        raise ValueError("only differential operators act on wave functions here")
    s = psi.sign
    ders = {d: [c] for d, c in psi.body.coeffs.items()}

    def der(d, l):
        seq = ders[d]
        while len(seq) <= l:
            seq.append(dx(seq[-1]))
        return seq[l]

    out = {}
    for j, p in P.coeffs.items():
        for l in range(j + 1):
            zpow = j - l
            factor = p * binomial(j, l) * (s**zpow)
            for d in psi.body.coeffs:
                term = factor * der(d, l)
                if term.is_zero():
                    continue
                deg = d + zpow
                out[deg] = out[deg] + term if deg in out else term
    return LaurentSeries(out, None, "z")


def check_eigen(psi: WaveSeries, P: PsiDO, power: int) -> None:
    """Raise unless ``P Psi = z^power Psi`` coefficient by coefficient."""
    lhs = apply_to_wave(P, psi)
    rhs = psi.body.shift(power)
    if psi.sign < 0 and power % 2:
        rhs = -rhs
    if lhs != rhs:
        raise EigenCheckFailed(f"operator of order {P.order} does not act by z^{power} on Psi_{psi.cell}")


def adjoint_baker(k: int, constants=None) -> WaveSeries:
    """``Psi*(x, z) = Psi(x, -z)``."""
    psi = baker(k, constants, certify=False)
    return WaveSeries(k, psi.body.reflect(), -1)


def _to_w(series: LaurentSeries) -> LaurentSeries:
    if not series.is_exact():
        raise ValueError("only exact series can be re-expressed in 1/z")
    return LaurentSeries({-d: c for d, c in series.coeffs.items()}, None, "w")


def wave_product(k: int, constants=None) -> LaurentSeries:
    """``Psi(x,z) Psi*(y,z) exp(-(x-y)z)`` as a polynomial in ``w = 1/z``."""
    psi = baker(k, constants, certify=False)
    star = adjoint_baker(k, constants)
    star_y = star.body.map_coefficients(lambda c: c.subs({"x": Y}))
    return _to_w(psi.body) * _to_w(star_y)


def residue_z(series_w: LaurentSeries) -> RatFun:
    """``[z^-1]`` of a series written in ``w = 1/z``."""
    return series_w.coefficient(1)


@dataclass
class BilinearCertificate:
    cell: int
    order: int
    vanishing: dict = field(default_factory=dict)  # m -> bool
    residues: dict = field(default_factory=dict)  # m -> canonical text

    def allowed(self, m: int) -> bool:
        """Powers ``z^m`` in C[z^2, z^(2k+1)] must annihilate the pairing."""
        return m % 2 == 0 or m >= 2 * self.cell + 1

    @property
    def matches_ring(self) -> bool:
        return all(self.vanishing[m] == self.allowed(m) for m in self.vanishing)


def bilinear_check(k: int, order: int, constants=None) -> BilinearCertificate:
    """Residues of ``z^m Psi(x,z) Psi*(y,z)`` for ``m = 0..order``."""
    P = wave_product(k, constants)
    cert = BilinearCertificate(k, order)
    for m in range(order + 1):
        floor = min(0, 1 + m - (P.top_degree or 0))
        E = exp_series(XI, floor, "w")
        res = residue_z((P * E).shift(-m))
        cert.vanishing[m] = res.is_zero()
        cert.residues[m] = str(res)
        if cert.allowed(m) and not res.is_zero():
            raise ResidueNonzero(f"residue of z^{m} Psi Psi* is {res} for cell {k}")
    return cert


# g_n and its Laguerre form


def gn_polynomial(n: int) -> list:
    """Coefficients of the polynomial prefactor of ``g_n``."""
    sign = (-1) ** (n - 1)
    return [
        Fraction(sign * factorial(2 * n - k - 2), factorial(k) * factorial(n - k - 1)) for k in range(n)
    ]


def exp_half_coeffs(M: int) -> list:
    """Taylor coefficients of ``exp(-z/2)`` through ``z^M``."""
    return [Fraction((-1) ** j, 2**j * factorial(j)) for j in range(M + 1)]


def _times_exp_half(poly: list, M: int) -> list:
    e = exp_half_coeffs(M)
    return [sum((poly[i] * e[j - i] for i in range(min(j, len(poly) - 1) + 1)), Fraction(0)) for j in range(M + 1)]


def laguerre(m: int, alpha: int) -> list:
    """Coefficients of ``L_m^alpha`` with the Gamma ratio taken as a finite product."""
    out = []
    for k in range(m + 1):
        prod = 1
        for j in range(k + 1, m + 1):
            prod *= j + alpha
        out.append(Fraction(prod * (-1) ** k, factorial(k) * factorial(m - k)))
    return out


@dataclass(frozen=True)
class GnSeries:
    n: int
    beta: tuple
    M: int

    def __getitem__(self, j):
        if j < 0:
            return Fraction(0)
        if j > self.M:
            raise TruncationError(f"beta_{j} requested but series only computed through z^{self.M}")
        return self.beta[j]


def gn_series(n: int, M: int) -> GnSeries:
    if n < 1:
        raise ValueError("n must be >= 1")
    if M < 2 * n:
        raise ValueError(f"gn_series needs M >= 2n = {2 * n}")
    return GnSeries(n, tuple(_times_exp_half(gn_polynomial(n), M)), M)


def gn_laguerre_series(n: int, M: int) -> GnSeries:
    lag = [c * factorial(n - 1) for c in laguerre(n - 1, -2 * n + 1)]
    return GnSeries(n, tuple(_times_exp_half(lag, M)), M)


def gn_ode_residual(g: GnSeries) -> list:
    """Coefficients of ``z g'' - 2(n-1) g' - z g / 4`` through ``z^(M-1)``."""
    b, n = g.beta, g.n
    out = []
    for j in range(g.M):
        val = (j + 1) * j * b[j + 1] - 2 * (n - 1) * (j + 1) * b[j + 1]
        if j >= 1:
            val -= b[j - 1] / 4
        out.append(val)
    return out


def odd_recursion_residual(g: GnSeries) -> list:
    """``8(2j-1)(j-n) beta_{2j-1} - beta_{2j-3}`` for every j with 2j-1 <= M."""
    out = []
    j = 1
    while 2 * j - 1 <= g.M:
        out.append(8 * (2 * j - 1) * (j - g.n) * g[2 * j - 1] - g[2 * j - 3])
        j += 1
    return out


@dataclass
class LemmaCertificate:
    n: int
    M: int
    odd_vanish: bool
    first_odd_nonzero: bool
    recursion: bool
    ode: bool
    laguerre: bool

    @property
    def passed(self):
        return self.odd_vanish and self.first_odd_nonzero and self.recursion and self.ode and self.laguerre


def lemma_check(n: int, M=None) -> LemmaCertificate:
    M = 2 * n + 6 if M is None else M
    g = gn_series(n, M)
    return LemmaCertificate(
        n,
        M,
        odd_vanish=all(g[2 * j - 1] == 0 for j in range(1, n)),
        first_odd_nonzero=g[2 * n - 1] != 0,
        recursion=all(r == 0 for r in odd_recursion_residual(g)),
        ode=all(r == 0 for r in gn_ode_residual(g)),
        laguerre=g.beta == gn_laguerre_series(n, M).beta,
    )


def gn_series_in_w(g: GnSeries, scale: RatFun) -> LaurentSeries:
    """``g_n(scale * z)`` as a series in ``w = 1/z``, known down to ``w^-M``."""
    coeffs = {}
    power = RatFun(1)
    for j in range(g.M + 1):
        if g.beta[j]:
            coeffs[-j] = power * g.beta[j]
        power = power * scale
    return LaurentSeries(coeffs, -g.M, "w")


def hadamard_residue(k: int, n: int, constants=None, M=None) -> RatFun:
    """``H_n`` of cell ``k`` from the contour formula with kernel ``g_n(2(x-y)z)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    M = max(2 * n, n + k + 2, 2 * k + 1) if M is None else M
    P = wave_product(k, constants)
    g = gn_series(n, M)
    series = gn_series_in_w(g, XI * 2) * exp_series(XI, -M, "w") * P
    res = residue_z(series)
    value = res * (-2) / XI ** (2 * n - 1)
    if value.denominator.subs({"x": Y.numerator}).is_zero():
        raise NonRationalResult(f"(x - y)^{2 * n - 1} does not divide the residue for cell {k}, n = {n}")
    return value


def hadamard_residue_exact(k: int, n: int, constants=None) -> RatFun:
    """Same as :func:`hadamard_residue` with the exponentials cancelled by hand."""
    P = wave_product(k, constants)
    poly = gn_polynomial(n)
    coeffs = {}
    power = RatFun(1)
    for j, c in enumerate(poly):
        coeffs[-j] = power * c
        power = power * XI * 2
    res = residue_z(LaurentSeries(coeffs, None, "w") * P)
    return res * (-2) / XI ** (2 * n - 1)
