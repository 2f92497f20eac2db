"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 mathematical
obstruction (a potential whose expansion needs logarithms).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .adler_moser import K_MAX, potential, theta
from .diffop import bc_pair, kdv_flow
from .errors import FiniteHeatError, LogObstruction
from .exact_core import CONSTANTS, parse, parse_rational
from .hadamard import (
    Certificate,
    check_symmetry,
    check_transport,
    diagonal_identity_check,
    hadamard_table,
    verify_finite_kernel,
)
from .verification import CHECKS, K_MAX_VERIFY, SCHEMA_VERSION, run_verification
from .wave import gn_series, lemma_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_OBSTRUCTION = 0, 1, 2, 3


def _assignment(text):
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or name not in CONSTANTS:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME one of s3, s5, ...; got {text!r}")
    try:
        return name, parse_rational(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _checks(text):
    names = [n.strip() for n in text.split(",") if n.strip()]
    bad = [n for n in names if n not in CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {sorted(CHECKS)}")
    return names


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="cell index")
    common.add_argument("--set", dest="assign", action="append", type=_assignment, default=[], metavar="NAME=VALUE")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--depth", type=int, default=None, help="truncation depth override")

    parser = argparse.ArgumentParser(prog="finite-heat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("theta", parents=[common], help="Adler-Moser polynomial theta_k")
    sub.add_parser("potential", parents=[common], help="potential u_k = 2 (log theta_k)''")

    p = sub.add_parser("hadamard", parents=[common], help="Hadamard coefficients H_1..H_N")
    p.add_argument("--orders", type=int, default=None, help="N, highest coefficient (default k+1)")
    p.add_argument("--u", dest="u_text", default=None, help="explicit potential instead of --k")

    p = sub.add_parser("gn", parents=[common], help="Taylor coefficients of g_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orders", type=int, default=None, help="highest Taylor order (default 2n+6)")

    p = sub.add_parser("flow", parents=[common], help="KdV flow [(L^(j/2))_+, L]")
    p.add_argument("--j", type=int, required=True, help="odd flow index")
    p.add_argument("--u", dest="u_text", default=None, help="explicit potential, e.g. u0 for a generic one")

    sub.add_parser("bc", parents=[common], help="commuting pair with M^2 = L^(2k+1)")

    p = sub.add_parser("verify", parents=[common], help="run the theorem-verification suite")
    p.add_argument("--checks", type=_checks, default=None, help=f"comma list from {','.join(sorted(CHECKS))}")
    return parser


def _need_k(parser, args, limit):
    if args.k is None:
        parser.error("--k is required")
    if not 0 <= args.k <= limit:
        parser.error(f"--k must lie in 0..{limit}")
    return args.k


def _constants(args):
    return dict(args.assign)


def _potential_from(parser, args, limit):
    if getattr(args, "u_text", None):
        try:
            return parse(args.u_text), None
        except ValueError as exc:
            parser.error(str(exc))
    k = _need_k(parser, args, limit)
    return potential(k, _constants(args)).u, k


def cmd_theta(parser, args, out):
    k = _need_k(parser, args, K_MAX)
    th = theta(k, _constants(args)).poly
    if args.format == "json":
        u = potential(k, _constants(args)).u
        out.write(_dump({"schema": SCHEMA_VERSION, "cell": k, "constants": _const_text(args), "theta": str(th), "potential": str(u)}) + "\n")
    else:
        out.write(f"{th}\n")
    return EXIT_OK


def cmd_potential(parser, args, out):
    k = _need_k(parser, args, K_MAX)
    u = potential(k, _constants(args)).u
    if args.format == "json":
        out.write(_dump({"schema": SCHEMA_VERSION, "cell": k, "constants": _const_text(args), "potential": str(u)}) + "\n")
    else:
        out.write(f"{u}\n")
    return EXIT_OK


def _const_text(args):
    return {k: str(v) for k, v in sorted(_constants(args).items())}


def hadamard_report(u, cell, constants, N, depth=None):
    """JSON-ready report for one Hadamard table."""
    table = hadamard_table(u, N)
    certs = {"transport": check_transport(table), "symmetry": check_symmetry(table)}
    if table.termination_index is not None:
        try:
            certs["finite_kernel"] = verify_finite_kernel(table)
        except FiniteHeatError as exc:
            certs["finite_kernel"] = Certificate("finite_kernel", False, str(exc), str(getattr(exc, "residual", "")))
    else:
        certs["finite_kernel"] = Certificate("finite_kernel", False, "skipped: expansion did not terminate")
    try:
        for n in range(1, N + 1):
            diagonal_identity_check(u, n, depth, table=table)
        certs["diagonal_identity"] = Certificate("diagonal_identity", True, f"n <= {N}")
    except FiniteHeatError as exc:
        certs["diagonal_identity"] = Certificate("diagonal_identity", False, str(exc))
    status = {}
    for name, c in certs.items():
        status[name] = "skipped" if c.detail.startswith("skipped") else ("pass" if c.passed else "fail")
    report = {
        "schema": SCHEMA_VERSION,
        "cell": cell,
        "potential": str(u),
        "constants": {k: str(v) for k, v in sorted(constants.items())},
        "coefficients": [str(h) for h in table.coefficients],
        "termination_index": table.termination_index,
        "certificates": status,
    }
    return table, report


def cmd_hadamard(parser, args, out):
    u, k = _potential_from(parser, args, K_MAX)
    N = args.orders if args.orders is not None else (k + 1 if k is not None else 3)
    if N < 1:
        parser.error("--orders must be >= 1")
    if args.format == "json":
        _, report = hadamard_report(u, k, _constants(args), N, args.depth)
        out.write(_dump(report) + "\n")
        return EXIT_OK
    table = hadamard_table(u, N)
    for n in range(1, N + 1):
        out.write(f"H_{n} = {table[n]}\n")
    t = table.termination_index
    out.write(f"termination_index = {t if t is not None else 'none'}\n")
    return EXIT_OK


def cmd_gn(parser, args, out):
    if args.n < 1:
        parser.error("--n must be >= 1")
    M = args.orders if args.orders is not None else 2 * args.n + 6
    if M < 2 * args.n:
        parser.error(f"--orders must be >= 2n = {2 * args.n}")
    g = gn_series(args.n, M)
    cert = lemma_check(args.n, M)
    if args.format == "json":
        out.write(
            _dump(
                {
                    "schema": SCHEMA_VERSION,
                    "n": args.n,
                    "orders": M,
                    "beta": [str(b) for b in g.beta],
                    "lemma": "pass" if cert.passed else "fail",
                }
            )
            + "\n"
        )
    else:
        for j, b in enumerate(g.beta):
            out.write(f"beta_{j} = {b}\n")
        out.write(f"lemma = {'pass' if cert.passed else 'fail'}\n")
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_flow(parser, args, out):
    if args.j < 1 or args.j % 2 == 0:
        parser.error("--j must be a positive odd integer")
    u, k = _potential_from(parser, args, K_MAX)
    f = kdv_flow(u, args.j, args.depth)
    if args.format == "json":
        out.write(_dump({"schema": SCHEMA_VERSION, "cell": k, "j": args.j, "potential": str(u), "flow": str(f)}) + "\n")
    else:
        out.write(f"{f}\n")
    return EXIT_OK


def cmd_bc(parser, args, out):
    k = _need_k(parser, args, K_MAX)
    pair = bc_pair(k, args.depth, u=potential(k, _constants(args)).u)
    if args.format == "json":
        out.write(_dump({"schema": SCHEMA_VERSION, "cell": k, "L": str(pair.L), "M": str(pair.M), "certificate": "pass"}) + "\n")
    else:
        out.write(f"L = {pair.L}\nM = {pair.M}\n")
    return EXIT_OK


def cmd_verify(parser, args, out):
    k = _need_k(parser, args, K_MAX_VERIFY)
    report = run_verification(k, _constants(args), args.depth, args.checks)
    if args.format == "json":
        out.write(_dump(report.as_dict()) + "\n")
    else:
        for name in sorted(report.results):
            cert, seconds = report.results[name]
            mark = "PASS" if cert.passed else "FAIL"
            out.write(f"{mark} {name:<9} {seconds:8.3f}s  {cert.detail}\n")
        failure = report.first_failure()
        if failure:
            name, cert = failure
            out.write(f"first failure: {name}: {cert.detail}\n")
            if cert.residual:
                out.write(f"residual: {cert.residual}\n")
        out.write(f"overall: {'pass' if report.passed else 'fail'}\n")
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "theta": cmd_theta,
    "potential": cmd_potential,
    "hadamard": cmd_hadamard,
    "gn": cmd_gn,
    "flow": cmd_flow,
    "bc": cmd_bc,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](parser, args, out)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except LogObstruction as exc:
        sys.stderr.write(f"obstruction: {exc}\n")
        return EXIT_OBSTRUCTION
    except FiniteHeatError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
