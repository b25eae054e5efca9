"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 size
budget exceeded, 4 unreadable or invalid data file. JSON goes to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import scipy.linalg

from . import braid, entangle, jsonio, qpa
from .jsonio import DataFormatError
from .tensor_core import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    BudgetExceededError,
    QuditShape,
    hermiticity_residual,
    matrix_residual,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_DATA = 4

MEASURE_NORM_TOL = 1e-8

SINGLE_SITE = {
    "x": qpa.generator_x,
    "z": qpa.generator_z,
    "f": qpa.fourier,
    "a": qpa.matrix_a,
    "b": qpa.matrix_b,
}


class UsageError(ValueError):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        jsonio.write_text(out, text)
    else:
        sys.stdout.write(text + "\n")


def _shape(args) -> QuditShape:
    return QuditShape(args.d, args.n, budget=args.budget)


def cmd_gen(args) -> int:
    if args.kind in SINGLE_SITE:
        m = SINGLE_SITE[args.kind](args.d)
    elif args.kind == "m":
        m = braid.m_matrix(_shape(args))
    else:
        m = braid.braid_matrix(_shape(args))
    _emit(jsonio.dumps_matrix(m), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.target == "qpa":
        report = qpa.verify_qpa(args.d, tol=args.tol)
    elif args.target == "algebra":
        report = braid.verify_m_algebra(_shape(args), tol=args.tol)
    elif args.target == "unitary":
        report = braid.verify_unitarity(_shape(args), tol=args.tol)
    elif args.matrix_free:
        report = braid.braid_relation_spot_check(_shape(args), tol=args.tol)
    else:
        report = braid.verify_braid_relation(_shape(args), tol=args.tol)
    print(json.dumps(report.to_dict()))
    if not report.passed:
        for c in report.checks:
            if not c.passed:
                print(f"FAIL {c.name}: residual {c.residual:.3e} > tol {c.tol:.1e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _parse_digits(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--k must be comma-separated integers, got {text!r}") from None


def cmd_ghz(args) -> int:
    digits = _parse_digits(args.k)
    if args.n is not None and args.n != len(digits):
        raise UsageError(f"--n {args.n} does not match {len(digits)} digits in --k")
    label = entangle.GhzLabel(args.d, digits, budget=args.budget)
    if args.mode == "braid":
        psi = entangle.ghz_by_braid(label)
    else:
        psi = entangle.ghz_closed_form(label)
    _emit(jsonio.dumps_state(psi), args.out)
    return EXIT_OK


def cmd_measure(args) -> int:
    psi = jsonio.loads_state(jsonio.read_text(args.state), check_norm=False)
    if psi.norm_residual() > MEASURE_NORM_TOL:
        raise DataFormatError(f"state is not normalized: |norm - 1| = {psi.norm_residual():.3e}")
    if not 1 <= args.m <= psi.sites // 2:
        raise UsageError(f"--m must lie in 1..{psi.sites // 2} for a {psi.sites}-site state")
    q = entangle.q_measure(psi, args.m, norm_tol=MEASURE_NORM_TOL)
    print(json.dumps({"m": args.m, "Q": q}))
    return EXIT_OK


def cmd_hamiltonian(args) -> int:
    s = braid.braid_matrix(_shape(args))
    h = braid.hamiltonian_from_braid(s, tol=args.tol)
    summary = {
        "roundtrip_residual": matrix_residual(scipy.linalg.expm(1j * h), s),
        "hermitian_residual": hermiticity_residual(h),
    }
    if args.out:
        jsonio.write_text(args.out, jsonio.dumps_matrix(h))
        print(json.dumps(summary))
    else:
        print(jsonio.dumps_matrix(h))
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="residual tolerance")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max dense dimension")
    common.add_argument("--format", choices=["json"], default="json")

    parser = argparse.ArgumentParser(
        prog="qudit-braid",
        description="Generalized qudit braid matrices, GHZ bases and Q-measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit a matrix as JSON")
    p.add_argument("kind", choices=[*SINGLE_SITE, "m", "braid"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=2, help="sites (m and braid only)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check algebraic relations")
    p.add_argument("target", choices=["qpa", "algebra", "braid", "unitary"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument(
        "--matrix-free",
        action="store_true",
        help="braid target: random-vector spot check instead of dense products",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ghz", parents=[common], help="emit a GHZ basis state as JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", required=True, help="comma-separated digits, e.g. 0,0,0")
    p.add_argument("--mode", choices=["closed", "braid"], default="closed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ghz)

    p = sub.add_parser("measure", parents=[common], help="Q-measure of a state file")
    p.add_argument("state")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("hamiltonian", parents=[common], help="H = -i log S as JSON")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_hamiltonian)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DataFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
