"""The theorem-verification suite run by ``finite-heat verify``.

Each check takes the cell index, the constants assignment and the depth
override and returns a :class:`~finite_heat.hadamard.Certificate`; failures
are reported as failed certificates, obstructions propagate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import __version__
from .adler_moser import potential
from .diffop import bc_pair, kdv_flow
from .errors import FiniteHeatError, LogObstruction
from .hadamard import (
    Certificate,
    check_symmetry,
    check_transport,
    diagonal_identity_check,
    hadamard_table,
    verify_finite_kernel,
)
from .wave import baker, bilinear_check, check_eigen, hadamard_residue, lemma_check

K_MAX_VERIFY = 4
SCHEMA_VERSION = 1


def _key(constants):
    return tuple(sorted(constants.items()))


@lru_cache(maxsize=32)
def _table(k, key, N):
    return hadamard_table(potential(k, dict(key)), N)


@lru_cache(maxsize=8)
def _pair(k, key, depth):
    return bc_pair(k, depth, u=potential(k, dict(key)).u)


def check_hadamard(k, constants, depth):
    table = _table(k, _key(constants), k + 2)
    t = table.termination_index
    if t != k + 1:
        return Certificate("hadamard", False, f"termination index {t}, expected {k + 1}")
    if k >= 1 and table[k].is_zero():
        return Certificate("hadamard", False, f"H_{k} vanishes; bound is not sharp")
    for cert in (check_transport(table), check_symmetry(table)):
        if not cert.passed:
            return Certificate("hadamard", False, cert.detail, cert.residual)
    return Certificate("hadamard", True, f"H_{k + 1} = 0, H_{k} != 0; transport and symmetry certified")


def check_bc(k, constants, depth):
    pair = _pair(k, _key(constants), depth)
    return Certificate("bc", True, f"M of order {pair.M.order} with M^2 = L^{2 * k + 1} and [M, L] = 0")


def check_flow(k, constants, depth):
    u = potential(k, constants).u
    for j in range(3, 2 * k + 6, 2):
        d = None if depth is None else max(depth, j)
        f = kdv_flow(u, j, d)
        if j >= 2 * k + 1 and not f.is_zero():
            return Certificate("flow", False, f"flow {j} does not vanish", str(f))
        if j < 2 * k + 1 and f.is_zero() and not constants:
            return Certificate("flow", False, f"flow {j} vanishes below the stationarity bound")
    return Certificate("flow", True, f"flows vanish exactly for odd j >= {2 * k + 1} (checked through {2 * k + 5})")


def check_diagonal(k, constants, depth):
    u = potential(k, constants)
    table = _table(k, _key(constants), k + 2)
    for n in range(1, k + 2):
        d = None if depth is None else max(depth, 2 * n - 1)
        diagonal_identity_check(u, n, d, table=table)
    return Certificate("diagonal", True, f"d/dx H_n(x,x) matches the scaled KdV flow for n <= {k + 1}")


def check_bilinear(k, constants, depth):
    cert = bilinear_check(k, 2 * k + 3, constants)
    if not cert.matches_ring:
        return Certificate("bilinear", False, f"vanishing pattern {cert.vanishing}")
    return Certificate("bilinear", True, f"residues vanish exactly for m even or m >= {2 * k + 1}")


def check_residue(k, constants, depth):
    N = max(4, k + 2)
    table = _table(k, _key(constants), N)
    for n in range(1, N + 1):
        h = hadamard_residue(k, n, constants)
        if h != table[n]:
            return Certificate("residue", False, f"H_{n} differs between methods", str(h - table[n]))
    return Certificate("residue", True, f"contour formula reproduces H_1..H_{N}")


def check_kernel(k, constants, depth):
    return verify_finite_kernel(_table(k, _key(constants), k + 2))


def check_eigen_ring(k, constants, depth):
    psi = baker(k, constants)
    pair = _pair(k, _key(constants), depth)
    check_eigen(psi, pair.M, 2 * k + 1)
    return Certificate("eigen", True, f"L Psi = z^2 Psi and M Psi = z^{2 * k + 1} Psi")


def check_lemma(k, constants, depth):
    for n in range(1, max(6, k + 1) + 1):
        c = lemma_check(n)
        if not c.passed:
            return Certificate("lemma", False, f"g_{n} suite failed: {c}")
    return Certificate("lemma", True, "odd Taylor coefficients, recursion, ODE and Laguerre form for n <= 6")


CHECKS = {
    "bc": check_bc,
    "bilinear": check_bilinear,
    "diagonal": check_diagonal,
    "eigen": check_eigen_ring,
    "flow": check_flow,
    "hadamard": check_hadamard,
    "kernel": check_kernel,
    "lemma": check_lemma,
    "residue": check_residue,
}


@dataclass
class VerificationReport:
    cell: int
    constants: dict
    results: dict = field(default_factory=dict)  # name -> (Certificate, seconds)

    @property
    def passed(self) -> bool:
        return all(c.passed for c, _ in self.results.values())

    def first_failure(self):
        for name in sorted(self.results):
            cert, _ = self.results[name]
            if not cert.passed:
                return name, cert
        return None

    def as_dict(self, timing: bool = True) -> dict:
        checks = {}
        for name in sorted(self.results):
            cert, seconds = self.results[name]
            entry = cert.as_dict()
            if timing:
                entry["seconds"] = round(seconds, 6)
            checks[name] = entry
        return {
            "schema": SCHEMA_VERSION,
            "tool": "finite-heat",
            "version": __version__,
            "cell": self.cell,
            "constants": {k: str(v) for k, v in sorted(self.constants.items())},
            "status": "pass" if self.passed else "fail",
            "checks": checks,
        }


def run_verification(k: int, constants=None, depth=None, checks=None) -> VerificationReport:
    """Run the named checks (all by default) in name order.

    :class:`LogObstruction` is re-raised; any other package error becomes a
    failed certificate.
    """
    names = sorted(CHECKS) if checks is None else sorted(set(checks))
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    report = VerificationReport(k, dict(constants or {}))
    for name in names:
        start = time.perf_counter()
        try:
            cert = CHECKS[name](k, constants or {}, depth)
        except LogObstruction:
            raise
        except FiniteHeatError as exc:
            residual = getattr(exc, "residual", None)
            cert = Certificate(name, False, f"{type(exc).__name__}: {exc}", None if residual is None else str(residual))
        report.results[name] = (cert, time.perf_counter() - start)
    return report
