"""Command-line front end: `linkmd analyze` and `linkmd paths`.

analyze ingests a resolution document and runs the full pipeline;
paths evaluates a symplectic path file and prints its crossing data and
index.  Exit codes: 0 on success (EQUAL_TWICE_MD or HMI_NEGATIVE
verdicts included), 2 on a MISMATCH verdict, 1 on any input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .czindex import DegenerateCrossingError, cz_index_report
from .discrepancy import InconsistentSystemError, UnderdeterminedSystemError
from .orbits import DEFAULT_BUDGET, PI_DEFAULT
from .paths import PathFormatError, PathValidationError, load_path
from .rationals import RationalFormatError, format_rational, parse_rational
from .report import AnalysisOptions, analyze_resolution, exit_code_for, render_json, render_text
from .resolution import ResolutionParseError, ResolutionValidationError, load_resolution


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkmd",
        description=(
            "Exact discrepancy / minimal discrepancy computations from "
            "resolution data, orbit-family index tables, and Conley-Zehnder "
            "indices of symplectic path files."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the full pipeline on a resolution document")
    analyze.add_argument("--input", required=True, help="path to a resolution JSON document")
    analyze.add_argument("--d-max", type=int, default=DEFAULT_BUDGET, help="family budget (default 8)")
    analyze.add_argument(
        "--pi-rational",
        default=format_rational(PI_DEFAULT),
        help="rational stand-in for pi in period formulas (default 355/113)",
    )
    analyze.add_argument("--format", choices=("text", "json"), default="text")
    theorem = analyze.add_mutually_exclusive_group()
    theorem.add_argument("--check-theorem", dest="check_theorem", action="store_true", default=True)
    theorem.add_argument("--no-check-theorem", dest="check_theorem", action="store_false")

    paths = sub.add_parser("paths", help="evaluate a symplectic path file")
    paths.add_argument("--input", required=True, help="path to a path JSON document")
    paths.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _run_analyze(args) -> int:
    try:
        data = open(args.input, "rb").read()
    except OSError as exc:
        return _fail(str(exc))
    try:
        res = load_resolution(data)
    except (ResolutionParseError, ResolutionValidationError) as exc:
        return _fail(f"{args.input}: {exc}")
    try:
        pi_rat = parse_rational(args.pi_rational, "--pi-rational")
        if pi_rat <= 0:
            return _fail("--pi-rational: must be positive")
        if args.d_max < 1:
            return _fail("--d-max: must be at least 1")
        options = AnalysisOptions(
            budget=args.d_max, pi_rational=pi_rat, check_theorem=args.check_theorem
        )
    except RationalFormatError as exc:
        return _fail(str(exc))
    try:
        report = analyze_resolution(res, options)
    except (UnderdeterminedSystemError, InconsistentSystemError) as exc:
        return _fail(f"{args.input}: {exc}")
    if args.format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report))
    return exit_code_for(report.verdict)


def _crossing_row(c) -> dict:
    time = format_rational(c.time) if isinstance(c.time, Fraction) else f"{c.time:.9f}"
    return {
        "time": time,
        "kernel_dim": c.kernel_dim,
        "signature": c.signature,
        "weight": format_rational(c.weight),
    }


def _run_paths(args) -> int:
    try:
        data = open(args.input, "rb").read()
    except OSError as exc:
        return _fail(str(exc))
    try:
        path = load_path(data)
    except (PathFormatError, PathValidationError) as exc:
        return _fail(f"{args.input}: {exc}")
    try:
        result = cz_index_report(path)
    except DegenerateCrossingError as exc:
        where = "" if exc.time is None else f" (t = {exc.time:.6f})"
        return _fail(f"degenerate crossing{where}: {exc}")
    if args.format == "json":
        doc = {
            "dimension": path.dimension,
            "crossings": [_crossing_row(c) for c in result.crossings],
            "index": format_rational(result.value),
        }
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        lines = [f"dimension: {path.dimension}", "crossings:"]
        for c in result.crossings:
            row = _crossing_row(c)
            lines.append(
                f"  t = {row['time']}  kernel dim {row['kernel_dim']}  "
                f"signature {row['signature']:+d}  weight {row['weight']}"
            )
        if not result.crossings:
            lines.append("  (none)")
        lines.append(f"index: {format_rational(result.value)}")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "analyze":
        return _run_analyze(args)
    return _run_paths(args)


if __name__ == "__main__":
    sys.exit(main())
