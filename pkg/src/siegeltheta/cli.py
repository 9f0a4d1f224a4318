"""Command-line interface: evaluate theta functions, stream verification
suites as JSON lines, and write convergence sweeps as CSV or JSON tables.

Exit codes: 0 success (all checks passed), 1 some check failed, 2 bad
arguments (including tau outside the upper half-plane), 3 non-convergence,
4 unwritable output path.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ConvergenceError, DomainError
from .suites import (
    SUITES,
    SWEEP_TARGETS,
    format_complex,
    render_sweep_csv,
    render_sweep_json,
    report_json_line,
    run_suite,
    sweep_rows,
)
from .theta import EvalConfig, product_terms, theta1, theta1_reduced, theta2, theta3, theta4

THREADS_ENV = "SIEGELTHETA_THREADS"

_FUNCTIONS = {"theta1": theta1, "theta2": theta2, "theta3": theta3, "theta4": theta4}


def parse_complex(text: str) -> complex:
    """Parse a compact complex literal: 0.5, i, 2i, 0.5-0.25i, 1+i.

    Whitespace inside the literal is rejected.
    """
    if not text or any(ch.isspace() for ch in text):
        raise DomainError(f"invalid complex literal {text!r}")
    try:
        value = complex(text.replace("i", "j").replace("I", "J"))
    except ValueError:
        raise DomainError(f"invalid complex literal {text!r}") from None
    if not (abs(value.real) < float("inf") and abs(value.imag) < float("inf")):
        raise DomainError(f"non-finite complex literal {text!r}")
    return value


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV}={raw!r} is not an integer") from None
    if threads < 1:
        raise DomainError(f"{THREADS_ENV} must be >= 1, got {threads}")
    return threads


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegeltheta",
        description="Jacobi theta evaluation and inversion-law verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a theta function at (z, tau)")
    ev.add_argument("function", choices=sorted(_FUNCTIONS))
    ev.add_argument("--z", required=True, help="complex literal, e.g. 0.5-0.25i")
    ev.add_argument("--tau", required=True, help="complex literal with Im > 0")
    ev.add_argument("--eps", type=float, default=1e-12, help="truncation tolerance")
    ev.add_argument("--max-terms", type=int, default=5000)
    ev.add_argument(
        "--reduce", action="store_true",
        help="apply inversion-based argument reduction (theta1 only)",
    )
    ev.set_defaults(handler=_cmd_eval)

    vf = sub.add_parser("verify", help="run a verification suite as JSON lines")
    vf.add_argument("suite", choices=SUITES + ("all",))
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--count", type=int, default=None, help="points per sampled suite")
    vf.add_argument("--tol", type=float, default=None, help="override the suite tolerance")
    vf.add_argument("--n", type=int, default=None, help="truncation index for lemma2/lemma3")
    vf.add_argument(
        "--timing", action="store_true",
        help="measure wall_ms per check (breaks byte-level reproducibility)",
    )
    vf.set_defaults(handler=_cmd_verify)

    sw = sub.add_parser("sweep", help="write a convergence sweep table")
    sw.add_argument("target", choices=SWEEP_TARGETS)
    sw.add_argument("--start", type=float, default=None)
    sw.add_argument("--stop", type=float, default=None)
    sw.add_argument("--steps", type=int, default=None)
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--out", default="-", help="output path, '-' for stdout")
    sw.set_defaults(handler=_cmd_sweep)

    return parser


def _cmd_eval(args) -> int:
    z = parse_complex(args.z)
    tau = parse_complex(args.tau)
    if args.reduce and args.function != "theta1":
        raise DomainError("--reduce is only available for theta1")
    cfg = EvalConfig(eps=args.eps, max_terms=args.max_terms, reduction_enabled=args.reduce)
    if args.function == "theta1" and args.reduce:
        value, terms, _ = theta1_reduced(z, tau, cfg)
    else:
        value = _FUNCTIONS[args.function](z, tau, cfg)
        terms = product_terms(z, tau, cfg)
    print(f"{format_complex(value)} terms={terms}")
    return 0


def _cmd_verify(args) -> int:
    reports = run_suite(
        args.suite,
        seed=args.seed,
        count=args.count,
        tol=args.tol,
        n=args.n,
        threads=_thread_count(),
        timing=args.timing,
    )
    out = sys.stdout
    for report in reports:
        out.write(report_json_line(report) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_sweep(args) -> int:
    header, rows = sweep_rows(args.target, args.start, args.stop, args.steps)
    rendered = (
        render_sweep_csv(header, rows)
        if args.format == "csv"
        else render_sweep_json(header, rows)
    )
    if args.out == "-":
        sys.stdout.write(rendered)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(rendered)
    except OSError as exc:
        print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return 4
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
