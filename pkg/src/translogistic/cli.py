"""Command-line front end.

Exit status is 0 on success, 2 for usage errors and 3 when a solver fails or
a parameter lies outside the regime of the requested approximation.
"""
import argparse
from pathlib import Path
import sys

import numpy as np

from .csvio import write_csv
from .dynamic import b_dynamic
from .errors import (
    ConfigurationError,
    ParseError,
    TransseriesError,
    UsageError,
)
from .harness import (
    FIGURE_IDS,
    align_overlay,
    approximation_table,
    emit_figure_data,
    error_sweep,
    import_reference_errors,
    landmarks,
    weight_rows,
)
from .maps import DynamicMapConfig, StaticMapConfig, iterate_dynamic, iterate_static
from .weights import profile_f4, profile_f8

EXIT_OK, EXIT_USAGE, EXIT_SOLVER = 0, 2, 3

_DEFAULT_STEPS = {"static": 600, "dynamic": 300, "static2": 600, "static4": 400}


def parse_grid(text):
    """Parse ``lo:hi:steps`` into an evenly spaced grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must look like lo:hi:steps")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse grid {text!r}") from None
    if steps < 1 or (steps > 1 and not hi > lo):
        raise argparse.ArgumentTypeError("grid needs steps >= 1 and hi > lo")
    return np.linspace(lo, hi, steps)


def _common(p, eps=True, grid=False, steps=True):
    if eps:
        p.add_argument("--eps", type=float, help="parameter offset eps")
    if grid:
        p.add_argument("--eps-grid", type=parse_grid, metavar="LO:HI:STEPS",
                       help="evenly spaced parameter grid")
    if steps:
        p.add_argument("--steps", type=int, metavar="N", help="number of steps")
    p.add_argument("--out", type=Path, metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv"], default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="translogistic",
        description="Transasymptotic approximations of the static and slowly varying logistic maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="iterate a map exactly (n,y)")
    p.add_argument("map", choices=["static", "dynamic"])
    _common(p)
    p.add_argument("--y0", type=float, default=2.0 / 3.0, metavar="V")

    p = sub.add_parser("approx", help="exact orbit against its approximation")
    p.add_argument("kind", choices=["static2", "static4", "dynamic"])
    _common(p)
    p.add_argument("--y0", type=float, default=2.0 / 3.0, metavar="V")

    p = sub.add_parser("weights", help="exponential weight profiles")
    p.add_argument("kind", choices=["per4", "per8", "dynamic"])
    _common(p, eps=False, grid=True, steps=False)

    p = sub.add_parser("landmarks", help="landmark steps n1, n2, n3")
    _common(p, grid=True, steps=False)
    p.add_argument("--grouping", choices=["paren", "literal"], default="paren")

    p = sub.add_parser("sweep", help="error sweep over a parameter grid")
    p.add_argument("mode", choices=["static2", "static4", "dynamic"])
    _common(p, grid=True)
    p.add_argument("--grouping", choices=["paren", "literal"], default="paren")
    p.add_argument("--ref", type=Path, metavar="CSV", help="reference errors (eps,error)")

    p = sub.add_parser("figure", help="figure data and gnuplot script")
    p.add_argument("figure_id", choices=FIGURE_IDS)
    p.add_argument("--out", type=Path, metavar="DIR", default=Path("."))
    p.add_argument("--ref", type=Path, metavar="CSV", help="reference errors (eps,error)")
    p.add_argument("--format", choices=["csv"], default="csv")
    return parser


def _need(args, parser, name):
    if getattr(args, name) is None:
        parser.error(f"--{name.replace('_', '-')} is required for {args.command}")
    return getattr(args, name)


def _grid_or_eps(args, parser):
    if getattr(args, "eps_grid", None) is not None:
        return args.eps_grid
    if getattr(args, "eps", None) is not None:
        return np.array([args.eps])
    parser.error(f"--eps or --eps-grid is required for {args.command}")


def _emit(args, header, rows):
    if args.out is None:
        write_csv(sys.stdout, header, rows)
    else:
        write_csv(args.out, header, rows)


def _run(args, parser):
    cmd = args.command
    if cmd == "simulate":
        eps = _need(args, parser, "eps")
        steps = args.steps if args.steps is not None else _DEFAULT_STEPS[args.map]
        if args.map == "static":
            orbit = iterate_static(StaticMapConfig(eps, args.y0), steps)
        else:
            orbit = iterate_dynamic(DynamicMapConfig(eps, 3.0, args.y0), steps)
        _emit(args, ["n", "y"], zip(orbit.n.tolist(), orbit.values))
    elif cmd == "approx":
        eps = _need(args, parser, "eps")
        steps = args.steps if args.steps is not None else _DEFAULT_STEPS[args.kind]
        tab = approximation_table(args.kind, eps, steps, args.y0)
        _emit(args, ["n", "x", "exact", "approx", "error"], tab.rows())
    elif cmd == "weights":
        grid = _need(args, parser, "eps_grid")
        if args.kind == "dynamic":
            b = b_dynamic(grid)
            _emit(args, ["z", "re_B", "im_B"], zip(grid, b.real, b.imag))
        else:
            prof = (profile_f4 if args.kind == "per4" else profile_f8)(grid)
            _emit(args, ["eps", "re_f", "im_f", "region"], weight_rows(prof))
    elif cmd == "landmarks":
        rows = []
        for e in _grid_or_eps(args, parser):
            lm = landmarks(float(e), args.grouping)
            rows.append((float(e), lm.K, lm.n1, lm.n2, lm.n3))
        _emit(args, ["eps", "K", "n1", "n2", "n3"], rows)
    elif cmd == "sweep":
        grid = _grid_or_eps(args, parser)
        reports = error_sweep(args.mode, grid, args.steps, getattr(args, "grouping", "paren"))
        ref = align_overlay(import_reference_errors(args.ref), grid) if args.ref else None
        if args.mode == "static4":
            header = ["eps", "max_error", "argmax_n", "branch1", "branch2", "branch3", "branch4"]
            rows = [(r.eps, r.max_abs_error, r.argmax_n, *r.branch_errors) for r in reports]
        elif args.mode == "dynamic":
            header = ["eps", "max_error", "argmax_n", "err_n1", "err_n2", "err_n3"]
            rows = [(r.eps, r.max_abs_error, r.argmax_n,
                     *[r.landmark_errors.get(n, float("nan")) for n in landmarks(r.eps, args.grouping).as_tuple()])
                    for r in reports]
        else:
            header = ["eps", "max_error", "argmax_n"]
            rows = [(r.eps, r.max_abs_error, r.argmax_n) for r in reports]
        if ref is not None:
            header = header + ["reference"]
            rows = [row + (v,) for row, v in zip(rows, ref)]
        _emit(args, header, rows)
    elif cmd == "figure":
        ref = import_reference_errors(args.ref) if args.ref else None
        for path in emit_figure_data(args.figure_id, args.out, ref):
            print(path)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args, parser)
    except (ConfigurationError, UsageError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TransseriesError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
