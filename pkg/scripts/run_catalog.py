#!/usr/bin/env python3
"""Run the full pipeline over every bundled fixture and print a summary.

Usage: python scripts/run_catalog.py [--d-max N]
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from linkmd.discrepancy import NEG_INFINITY
from linkmd.fixtures import fixture, fixture_names
from linkmd.rationals import format_rational
from linkmd.report import AnalysisOptions, analyze_resolution


def fmt(value) -> str:
    return "-inf" if value is NEG_INFINITY else format_rational(value)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--d-max", type=int, default=8)
    args = parser.parse_args()

    header = f"{'fixture':20} {'a':>22} {'md':>6} {'class':24} {'mi':>6} {'verdict':16}"
    print(header)
    print("-" * len(header))
    for name in fixture_names():
        res = fixture(name)
        report = analyze_resolution(res, AnalysisOptions(budget=args.d_max))
        a_str = "(" + ", ".join(format_rational(v) for v in report.discrepancies.values) + ")"
        print(
            f"{name:20} {a_str:>22} {fmt(report.md.value):>6} "
            f"{report.md.classification.value:24} {fmt(report.mi_closed):>6} "
            f"{report.verdict.relation.value:16}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
