"""Command-line front end: ``eval``, ``table``, ``verify`` and ``kernel``.

Data goes to stdout, diagnostics to stderr.  Exit codes are 0 on success,
1 when a verification check fails, 2 on a usage error and 3 on a numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from .clausen import Family, evaluate
from .kernel import MAX_COEFFS, kernel_coeffs_lambert, kernel_coeffs_taylor
from .numerics import DEFAULT_PRECISION, ClausenError, DomainError, Precision
from .suites import SUITES, run_suite
from .theta import Modulus

__all__ = ["main", "run", "format_number", "dumps"]

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
FAMILIES = ("circular", "elliptic", "hyperbolic")


class UsageError(Exception):
    pass


def format_number(x) -> str:
    """17 significant digits, enough to round-trip any double."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj) -> str:
    """Serialize nested dicts/lists/scalars as one-line JSON.

    Floats are written with :func:`format_number` rather than ``repr`` so
    every number carries the same 17-digit width.
    """
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _precision(args) -> Precision:
    try:
        return Precision(
            abs_tol=args.tol if args.tol is not None else DEFAULT_PRECISION.abs_tol,
            max_terms=args.max_terms if args.max_terms is not None else DEFAULT_PRECISION.max_terms,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _family(args) -> Family:
    tau_im = getattr(args, "tau_im", None)
    if args.family == "elliptic":
        if tau_im is None:
            raise UsageError("the elliptic family requires --tau-im t > 0")
        if not (tau_im > 0 and math.isfinite(tau_im)):
            raise UsageError(f"--tau-im must be positive and finite, got {tau_im}")
        return Family.elliptic(tau_im)
    if tau_im is not None:
        raise UsageError(f"--tau-im applies only to the elliptic family, not {args.family}")
    return Family(args.family)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def cmd_eval(args) -> int:
    fam = _family(args)
    prec = _precision(args)
    res = evaluate(fam, args.order, args.x, prec)
    out = {"family": fam.kind, "n": args.order, "x": args.x}
    if fam.kind == "elliptic":
        out["tau_im"] = fam.t
    out.update(
        value=float(res.value),
        err_bound=res.err_bound,
        terms_used=res.terms_used,
        route=res.route,
    )
    _emit(dumps(out))
    return EXIT_OK


def cmd_table(args) -> int:
    fam = _family(args)
    prec = _precision(args)
    if args.steps < 2:
        raise UsageError(f"--steps must be at least 2, got {args.steps}")
    if not args.x_min < args.x_max:
        raise UsageError("--x-min must be smaller than --x-max")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "value", "err_bound", "diagnostic"])
    for x in np.linspace(args.x_min, args.x_max, args.steps):
        try:
            r = evaluate(fam, args.order, float(x), prec)
        except DomainError as exc:
            writer.writerow([format_number(x), "", "", str(exc)])
        else:
            writer.writerow([format_number(x), format_number(r.value), format_number(r.err_bound), ""])
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(args) -> int:
    prec = _precision(args)
    t = 1.0 if args.tau_im is None else args.tau_im
    if not (t > 0 and math.isfinite(t)):
        raise UsageError(f"--tau-im must be positive and finite, got {t}")
    if args.m_max < 1:
        raise UsageError("--m-max must be at least 1")
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    families = None
    if args.family is not None:
        families = [Family.elliptic(t) if args.family == "elliptic" else Family(args.family)]
    report = run_suite(args.suite, t, args.m_max, families, args.n_max, prec)
    _emit(dumps(report.to_dict()))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_kernel(args) -> int:
    prec = _precision(args)
    if not 1 <= args.coeffs <= MAX_COEFFS:
        raise UsageError(f"--coeffs must lie in 1..{MAX_COEFFS}, got {args.coeffs}")
    t = args.tau_im
    if not (t > 0 and math.isfinite(t)):
        raise UsageError(f"--tau-im must be positive and finite, got {t}")
    mod = Modulus(t)
    results = [
        kernel_coeffs_lambert(mod, args.coeffs, prec),
        kernel_coeffs_taylor(mod, args.coeffs, prec),
    ]
    keys = [f"c{2 * m}" for m in range(1, args.coeffs + 1)]
    out = {
        "t": mod.t,
        "results": [
            {
                "t": r.t,
                "route": r.route,
                "coeffs": {k: r[m] for m, k in enumerate(keys, 1)},
                "errors": {k: r.errors[m] for m, k in enumerate(keys, 1)},
            }
            for r in results
        ],
        "deltas": {k: results[0][m] - results[1][m] for m, k in enumerate(keys, 1)},
    }
    _emit(dumps(out))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    # the precision flags are accepted both before and after the subcommand;
    # SUPPRESS keeps a subcommand default from overwriting an earlier value
    def precision_flags(p, default):
        p.add_argument("--tol", type=float, default=default,
                       help="absolute series tolerance (default 1e-12)")
        p.add_argument("--max-terms", type=int, default=default,
                       help="hard cap on series terms (default 5000000)")
        p.add_argument("--tau", default=default, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="ellclausen",
        description="Circular, elliptic and hyperbolic Clausen functions.",
    )
    precision_flags(parser, None)
    common = argparse.ArgumentParser(add_help=False)
    precision_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate one value as JSON")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--order", "-n", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tau-im", type=float)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", parents=[common], help="CSV table on a uniform grid")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--order", "-n", type=int, required=True)
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--tau-im", type=float)
    p.add_argument("--out", help="write the CSV to this file instead of stdout")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--tau-im", type=float, help="modulus for t-dependent checks (default 1)")
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--family", choices=FAMILIES, help="restrict the recursion suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kernel", parents=[common], help="kernel Taylor coefficients")
    p.add_argument("--coeffs", type=int, required=True)
    p.add_argument("--tau-im", type=float, default=1.0)
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on malformed input
    if args.tau is not None:
        parser.error("--tau (complex modulus) is reserved; pass the imaginary part with --tau-im")
    try:
        if args.max_terms is not None and args.max_terms < 8:
            raise UsageError("--max-terms must be at least 8")
        if args.tol is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ClausenError, OverflowError, ZeroDivisionError) as exc:
        sys.stderr.write(f"ellclausen: numerical failure: {exc}\n")
        return EXIT_NUMERIC


def run() -> None:
    sys.exit(main())
