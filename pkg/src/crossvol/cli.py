"""Command line front end.

Exit codes: 0 success, 2 bad input or usage, 3 enumeration cap exceeded,
4 numerical failure.
"""

from __future__ import annotations

import os

# Honor the thread cap before any BLAS-backed import happens.
_threads = os.environ.get("CROSSVOL_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds, cross, funcross, gallery, verify
from .core import classify, format_float, read_matrix, write_matrix
from .exceptions import CapabilityError, CrossvolError, NumericalError
from .maxvol import check_principal_optimality

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPABILITY = 3
EXIT_NUMERICAL = 4


def _dump_json(payload, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _one_based(indices) -> list[int]:
    return [int(i) + 1 for i in indices]


def _load_matrix(args) -> np.ndarray:
    if getattr(args, "input", None):
        return read_matrix(args.input)
    if getattr(args, "gallery", None):
        if args.n is None:
            raise ValueError("--n is required with --gallery")
        return gallery.generate(args.gallery, args.n, seed=args.seed, theta=args.theta)
    raise ValueError("provide a matrix via --input FILE or --gallery NAME --n N")


def _add_matrix_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", metavar="FILE", help="matrix in the plain text format")
    parser.add_argument("--gallery", metavar="NAME",
                        help=f"gallery family ({', '.join(gallery.GALLERY_NAMES)})")
    parser.add_argument("--n", type=int, help="gallery size parameter")
    parser.add_argument("--seed", type=int, help="seed for random gallery families")
    parser.add_argument("--theta", type=float, help="angle for the kahan families")


def _volume_payload(res) -> dict:
    return {
        "rows": _one_based(res.row_set),
        "cols": _one_based(res.col_set),
        "volume": res.volume,
        "is_principal": res.is_principal,
    }


def cmd_classify(args) -> int:
    a = _load_matrix(args)
    _dump_json(classify(a, tol=args.tol).to_dict(), args.output)
    return EXIT_OK


def cmd_maxvol(args) -> int:
    a = _load_matrix(args)
    verdict = check_principal_optimality(a, args.k)
    _dump_json({
        "k": args.k,
        "principal_optimal": verdict.holds,
        "overall": _volume_payload(verdict.overall),
        "principal": _volume_payload(verdict.principal),
    }, args.output)
    return EXIT_OK


def cmd_cross(args) -> int:
    a = _load_matrix(args)
    result = cross.cross_approximate(a, args.m, strategy=args.strategy,
                                     breakdown_tol=args.tol)
    payload = {
        "pivots": [[i + 1, j + 1, p] for i, j, p in result.pivots],
        "row_indices": _one_based(result.row_indices),
        "col_indices": _one_based(result.col_indices),
        "steps_completed": result.steps_completed,
        "termination": result.termination,
        "residual_max": result.residual_max,
        "lookahead": ([result.lookahead[0] + 1, result.lookahead[1] + 1, result.lookahead[2]]
                      if result.lookahead else None),
    }
    if result.steps_completed:
        payload["skeleton_error"] = cross.skeleton_error(a, result)
    _dump_json(payload, args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    a = _load_matrix(args)
    _dump_json(bounds.bound_report(a, args.m).to_dict(), args.output)
    return EXIT_OK


def cmd_gallery(args) -> int:
    a = gallery.generate(args.name, args.n, seed=args.seed, theta=args.theta)
    if args.output:
        write_matrix(a, args.output, comment=f"crossvol gallery name={args.name} n={args.n}"
                     + (f" seed={args.seed}" if args.seed is not None else ""))
    else:
        write_matrix(a, sys.stdout)
    return EXIT_OK


def _resolve_format(args) -> str:
    if args.format:
        return args.format
    if args.output and args.output.endswith(".json"):
        return "json"
    return "csv"


def cmd_funcross(args) -> int:
    f = funcross.get_function(args.function, c=args.c)
    grid = funcross.Grid.chebyshev(args.grid)
    result = funcross.function_cross(f, args.m, grid, breakdown_tol=args.tol)
    summary = {
        "function": args.function,
        "m": args.m,
        "grid_size": args.grid,
        "points": [[x, y] for x, y in result.points],
        "point_indices": [[i + 1, j + 1] for i, j in result.point_indices],
        "pivot_values": list(result.pivot_values),
        "error_max": result.error_max,
        "steps_completed": result.steps_completed,
        "termination": result.termination,
    }
    if _resolve_format(args) == "json":
        _dump_json(summary, args.output)
    else:
        lines = [",".join(format_float(v) for v in row) for row in result.residual_grid]
        text = "\n".join(lines) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def _parse_range(spec: str) -> list[int]:
    """Parse 'start:step:stop' (inclusive) or a single integer."""
    parts = spec.split(":")
    if len(parts) == 1:
        return [int(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"size range must be 'start:step:stop', got {spec!r}")
    start, step, stop = (int(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"bad size range {spec!r}")
    return list(range(start, stop + 1, step))


def cmd_tightness(args) -> int:
    sizes = _parse_range(args.n)
    records = verify.tightness_sweep(args.family, sizes)
    ns = [rec["n"] for rec in records]
    slopes = {key: verify.fit_slope(ns, [rec[key] for rec in records])
              for key in ("norm_L_inv", "norm_U_inv", "r_m")}
    header = ["n", "norm_L_inv", "norm_U_inv", "norm_D_inv", "r_m", "last_pivot_abs",
              "interchanges", "slope_norm_L_inv", "slope_norm_U_inv", "slope_r_m"]
    lines = [",".join(header)]
    for rec in records:
        lines.append(",".join([
            str(rec["n"]),
            format_float(rec["norm_L_inv"]),
            format_float(rec["norm_U_inv"]),
            format_float(rec["norm_D_inv"]),
            format_float(rec["r_m"]),
            format_float(rec["last_pivot_abs"]),
            "1" if rec["interchanges"] else "0",
            format_float(slopes["norm_L_inv"]),
            format_float(slopes["norm_U_inv"]),
            format_float(slopes["r_m"]),
        ]))
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, budget=args.budget)
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'} {res.name}: {res.detail}")
    failed = sum(not res.passed for res in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossvol",
        description="Cross approximation with complete pivoting: runs, oracles, and bound reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="matrix class flags as JSON")
    _add_matrix_source(p)
    p.add_argument("--tol", type=float, default=None, help="classification tolerance")
    p.add_argument("-o", "--output", help="output path (stdout when omitted)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("maxvol", help="exhaustive max-volume search with witnesses")
    _add_matrix_source(p)
    p.add_argument("--k", type=int, required=True, help="submatrix size")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_maxvol)

    p = sub.add_parser("cross", help="cross approximation pivot record")
    _add_matrix_source(p)
    p.add_argument("--m", type=int, required=True, help="number of pivot steps")
    p.add_argument("--strategy", choices=(cross.FULL, cross.DIAGONAL), default=cross.FULL)
    p.add_argument("--tol", type=float, default=cross.DEFAULT_BREAKDOWN_TOL,
                   help="relative breakdown tolerance")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cross)

    p = sub.add_parser("bounds", help="achieved error against every applicable bound")
    _add_matrix_source(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gallery", help="write a gallery matrix in the text format")
    p.add_argument("--name", required=True, choices=gallery.GALLERY_NAMES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("funcross", help="cross approximation of a named bivariate function")
    p.add_argument("--function", required=True, choices=funcross.FUNCTION_NAMES)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--grid", type=int, default=funcross.DEFAULT_GRID_SIZE,
                   help="points per axis of the Chebyshev grid")
    p.add_argument("--c", type=float, default=4.0, help="shift parameter of runge2d")
    p.add_argument("--tol", type=float, default=funcross.DEFAULT_BREAKDOWN_TOL)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_funcross)

    p = sub.add_parser("tightness", help="LDU norm sweep over a gallery family, CSV with slopes")
    p.add_argument("--family", required=True, choices=("quad_growth", "bidiagonal"))
    p.add_argument("--n", required=True, help="size range start:step:stop (inclusive) or a single size")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tightness)

    p = sub.add_parser("verify", help="run a verification battery")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (CrossvolError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
