"""Bundled resolution fixtures spanning all four classifications.

Surface fixtures are written in surface-geometry shorthand (genus,
self-intersections, crossings); higher-dimensional models list their
curve classes explicitly.  Documents are plain dicts in the external
JSON schema, so they double as loader test inputs.
"""

from __future__ import annotations

import json

from .resolution import ResolutionData, load_resolution


def _chain_cross(l: int) -> list[list[int]]:
    cross = [[0] * l for _ in range(l)]
    for i in range(l - 1):
        cross[i][i + 1] = cross[i + 1][i] = 1
    return cross


def _surface_doc(genus, self_int, cross, wrapping, epsilon="1/10"):
    l = len(genus)
    return {
        "complex_dimension": 2,
        "divisors": [{"id": i + 1, "label": f"E{i + 1}"} for i in range(l)],
        "wrapping_numbers": list(wrapping),
        "epsilon": epsilon,
        "surface_geometry": {
            "genus": list(genus),
            "self_intersection": list(self_int),
            "cross": cross,
        },
    }


def _ak_chain(k: int) -> dict:
    return _surface_doc([0] * k, [-2] * k, _chain_cross(k), ["1"] * k)


def _d4() -> dict:
    # three (-2)-legs meeting a central (-2)-curve
    cross = [[0] * 4 for _ in range(4)]
    for leg in range(3):
        cross[leg][3] = cross[3][leg] = 1
    return _surface_doc([0] * 4, [-2] * 4, cross, ["1"] * 4)


def _cone(genus: int, self_int: int) -> dict:
    return _surface_doc([genus], [self_int], [[0]], ["1"])


def _smooth_model(n: int) -> dict:
    # single blow-up of the smooth point: one divisor, paired against a line
    return {
        "complex_dimension": n,
        "divisors": [{"id": 1, "label": "E"}],
        "nerve": [[1]],
        "curves": [
            {
                "pair_with_divisors": ["-1"],
                "pair_with_K": str(-(n - 1)),
                "label": "line",
            }
        ],
        "wrapping_numbers": ["1"],
        "epsilon": "1/10",
    }


def _terminal_pair() -> dict:
    # two disjoint divisors with discrepancies 1 and 2; the argmin divisor
    # carries the large wrapping number so short-period families all live
    # on the other one
    return {
        "complex_dimension": 3,
        "divisors": [{"id": 1, "label": "E1"}, {"id": 2, "label": "E2"}],
        "nerve": [[1], [2]],
        "curves": [
            {"pair_with_divisors": ["-1", "0"], "pair_with_K": "-1", "label": "C1"},
            {"pair_with_divisors": ["0", "-1"], "pair_with_K": "-2", "label": "C2"},
        ],
        "wrapping_numbers": ["10", "1/10"],
        "epsilon": "1/10",
    }


_BUILDERS = {
    "a1": lambda: _ak_chain(1),
    "a2": lambda: _ak_chain(2),
    "a3": lambda: _ak_chain(3),
    "a4": lambda: _ak_chain(4),
    "d4": _d4,
    "elliptic-cone-d1": lambda: _cone(1, -1),
    "elliptic-cone-d2": lambda: _cone(1, -2),
    "elliptic-cone-d3": lambda: _cone(1, -3),
    "rational-cone-deg3": lambda: _cone(0, -3),
    "genus2-cone": lambda: _cone(2, -1),
    "smooth-c2": lambda: _cone(0, -1),
    "smooth-c3": lambda: _smooth_model(3),
    "smooth-c4": lambda: _smooth_model(4),
    "terminal-pair": _terminal_pair,
}

# fixtures whose minimal discrepancy is finite (main-identity equality cases)
EQUALITY_FIXTURES = (
    "a1",
    "a2",
    "a3",
    "a4",
    "d4",
    "elliptic-cone-d1",
    "elliptic-cone-d2",
    "elliptic-cone-d3",
    "rational-cone-deg3",
    "smooth-c2",
    "smooth-c3",
    "smooth-c4",
    "terminal-pair",
)

DIVERGENT_FIXTURES = ("genus2-cone",)

ADE_FIXTURES = ("a1", "a2", "a3", "a4", "d4")

SMOOTH_FIXTURES = {"smooth-c2": 2, "smooth-c3": 3, "smooth-c4": 4}

# fixtures with a unique argmin divisor and md >= 0 (separation property)
SEPARATION_FIXTURES = ("a1", "smooth-c2", "smooth-c3", "smooth-c4", "terminal-pair")


def fixture_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def fixture_document(name: str) -> dict:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(_BUILDERS)}") from None


def fixture_bytes(name: str) -> bytes:
    return json.dumps(fixture_document(name), sort_keys=True, indent=1).encode("utf-8")


def fixture(name: str) -> ResolutionData:
    return load_resolution(fixture_document(name))
