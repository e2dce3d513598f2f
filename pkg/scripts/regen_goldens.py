#!/usr/bin/env python3
"""Regenerate the checked-in golden CLI reports under tests/golden/.

Run after any intentional change to the report format, then review the
diff: goldens pin the byte-exact text output of `linkmd analyze` for
every bundled fixture (plus one JSON report).
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from linkmd.fixtures import fixture, fixture_names
from linkmd.report import analyze_resolution, render_json, render_text

GOLDEN_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name in fixture_names():
        report = analyze_resolution(fixture(name))
        (GOLDEN_DIR / f"{name}.text.golden").write_text(render_text(report))
        print(f"wrote {name}.text.golden")
    report = analyze_resolution(fixture("a2"))
    (GOLDEN_DIR / "a2.json.golden").write_text(render_json(report))
    print("wrote a2.json.golden")
    return 0


if __name__ == "__main__":
    sys.exit(main())
