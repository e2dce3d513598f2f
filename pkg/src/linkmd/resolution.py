"""Input data model for a resolved isolated singularity.

A ResolutionData bundles the combinatorics of the exceptional locus (the
nerve of nonempty intersections), a finite generating set of curve
classes with their pairings, the wrapping numbers and the neighborhood
size parameter.  Everything rational is an exact Fraction.  For surfaces
the curve pairings can be derived from genus/self-intersection data via
adjunction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from hashlib import sha256

from .rationals import RationalFormatError, format_rational, parse_rational


class ResolutionParseError(ValueError):
    """The document is malformed (not valid JSON / wrong shapes)."""


class ResolutionValidationError(ValueError):
    """A structural invariant is violated; the message names the field."""


@dataclass(frozen=True)
class Divisor:
    id: int
    label: str = ""


@dataclass(frozen=True)
class CurveClass:
    """Pairings of one curve class against every divisor and against K."""

    pair_with_divisors: tuple[Fraction, ...]
    pair_with_k: Fraction
    label: str = ""


@dataclass(frozen=True)
class SurfaceCurveGeometry:
    """Surface-case shorthand: genus, self-intersections and crossings.

    The intersection matrix has self_intersection on the diagonal and
    cross_intersections off it; off-diagonal entries must be symmetric
    and nonnegative.
    """

    genus: tuple[int, ...]
    self_intersection: tuple[int, ...]
    cross_intersections: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        l = len(self.genus)
        if len(self.self_intersection) != l:
            raise ResolutionValidationError(
                "surface_geometry.self_intersection: length must match genus"
            )
        if len(self.cross_intersections) != l or any(
            len(row) != l for row in self.cross_intersections
        ):
            raise ResolutionValidationError(
                "surface_geometry.cross: must be an l-by-l matrix"
            )
        for g in self.genus:
            if g < 0:
                raise ResolutionValidationError(
                    "surface_geometry.genus: genus must be nonnegative"
                )
        cross = self.cross_intersections
        for i in range(l):
            for j in range(l):
                if i == j:
                    if cross[i][i] not in (0, self.self_intersection[i]):
                        raise ResolutionValidationError(
                            "surface_geometry.cross: diagonal entries must be 0 "
                            "or repeat self_intersection"
                        )
                    continue
                if cross[i][j] != cross[j][i]:
                    raise ResolutionValidationError(
                        "surface_geometry.cross: matrix must be symmetric"
                    )
                if cross[i][j] < 0:
                    raise ResolutionValidationError(
                        "surface_geometry.cross: off-diagonal entries must be nonnegative"
                    )

    def intersection_matrix(self) -> list[list[Fraction]]:
        l = len(self.genus)
        return [
            [
                Fraction(self.self_intersection[i])
                if i == j
                else Fraction(self.cross_intersections[i][j])
                for j in range(l)
            ]
            for i in range(l)
        ]


@dataclass(frozen=True)
class ResolutionData:
    """Validated description of one resolution; immutable after construction."""

    complex_dimension: int
    divisors: tuple[Divisor, ...]
    nerve: frozenset[frozenset[int]]
    curves: tuple[CurveClass, ...]
    wrapping_numbers: tuple[Fraction, ...]
    epsilon: Fraction
    surface_geometry: SurfaceCurveGeometry | None = None

    def __post_init__(self):
        _validate(self)

    @property
    def divisor_count(self) -> int:
        return len(self.divisors)

    @property
    def divisor_ids(self) -> tuple[int, ...]:
        return tuple(d.id for d in self.divisors)

    def wrapping_number(self, divisor_id: int) -> Fraction:
        return self.wrapping_numbers[self.divisor_ids.index(divisor_id)]


def _validate(res: ResolutionData) -> None:
    l = len(res.divisors)
    if l < 1:
        raise ResolutionValidationError("divisors: at least one divisor is required")
    if res.complex_dimension < 2:
        raise ResolutionValidationError(
            "complex_dimension: must be at least 2"
        )
    ids = [d.id for d in res.divisors]
    if len(set(ids)) != l:
        raise ResolutionValidationError("divisors: ids must be distinct")
    id_set = set(ids)

    if len(res.wrapping_numbers) != l:
        raise ResolutionValidationError(
            "wrapping_numbers: need one wrapping number per divisor"
        )
    for i, lam in enumerate(res.wrapping_numbers):
        if lam <= 0:
            raise ResolutionValidationError(
                f"wrapping_numbers[{i}]: wrapping number must be positive"
            )
    if res.epsilon <= 0:
        raise ResolutionValidationError("epsilon: must be positive")

    for subset in res.nerve:
        if not subset:
            raise ResolutionValidationError("nerve: empty subsets are not allowed")
        if not subset <= id_set:
            raise ResolutionValidationError(
                f"nerve: subset {sorted(subset)} mentions unknown divisor ids"
            )
    for i in id_set:
        if frozenset({i}) not in res.nerve:
            raise ResolutionValidationError(
                f"nerve not downward closed: singleton {{{i}}} is missing"
            )
    for subset in res.nerve:
        for drop in subset:
            sub = subset - {drop}
            if sub and sub not in res.nerve:
                raise ResolutionValidationError(
                    f"nerve not downward closed: {sorted(sub)} missing below {sorted(subset)}"
                )

    for k, curve in enumerate(res.curves):
        if len(curve.pair_with_divisors) != l:
            raise ResolutionValidationError(
                f"curves[{k}].pair_with_divisors: expected {l} entries, "
                f"got {len(curve.pair_with_divisors)}"
            )

    if res.surface_geometry is not None and len(res.surface_geometry.genus) != l:
        raise ResolutionValidationError(
            "surface_geometry: divisor count does not match"
        )


def from_surface_geometry(
    geom: SurfaceCurveGeometry,
    wrapping_numbers,
    epsilon,
    labels=None,
) -> ResolutionData:
    """Build surface ResolutionData from intersection data via adjunction.

    Curve i is the divisor E_i itself: its pairing vector is row i of the
    intersection matrix and E_i . K = 2 g_i - 2 - E_i . E_i.  The nerve
    holds {i, j} exactly when E_i . E_j > 0 (plus all singletons).
    """
    l = len(geom.genus)
    labels = list(labels) if labels is not None else [f"E{i + 1}" for i in range(l)]
    if len(labels) != l:
        raise ResolutionValidationError("labels: need one label per divisor")
    matrix = geom.intersection_matrix()
    divisors = tuple(Divisor(id=i + 1, label=labels[i]) for i in range(l))
    curves = tuple(
        CurveClass(
            pair_with_divisors=tuple(matrix[i]),
            pair_with_k=Fraction(2 * geom.genus[i] - 2 - geom.self_intersection[i]),
            label=labels[i],
        )
        for i in range(l)
    )
    nerve = {frozenset({i + 1}) for i in range(l)}
    for i in range(l):
        for j in range(i + 1, l):
            if matrix[i][j] > 0:
                nerve.add(frozenset({i + 1, j + 1}))
    return ResolutionData(
        complex_dimension=2,
        divisors=divisors,
        nerve=frozenset(nerve),
        curves=curves,
        wrapping_numbers=tuple(Fraction(w) for w in wrapping_numbers),
        epsilon=Fraction(epsilon),
        surface_geometry=geom,
    )


def _parse_geometry(raw, field: str) -> SurfaceCurveGeometry:
    if not isinstance(raw, dict):
        raise ResolutionParseError(f"{field}: expected an object")
    try:
        genus = tuple(int(g) for g in raw["genus"])
        self_int = tuple(int(s) for s in raw["self_intersection"])
        cross = tuple(tuple(int(x) for x in row) for row in raw["cross"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ResolutionParseError(f"{field}: {exc}") from exc
    return SurfaceCurveGeometry(genus, self_int, cross)


def load_resolution(document) -> ResolutionData:
    """Parse and validate a resolution document (bytes, str or parsed dict).

    Rationals must be strings "p/q" (or plain integers); floats are a
    parse error.  When surface_geometry is present and curves/nerve are
    omitted they are derived via from_surface_geometry.
    """
    if isinstance(document, (bytes, bytearray)):
        document = document.decode("utf-8")
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ResolutionParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ResolutionParseError("top level: expected a JSON object")

    try:
        n = int(document["complex_dimension"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ResolutionParseError(f"complex_dimension: {exc}") from exc

    raw_divisors = document.get("divisors")
    if not isinstance(raw_divisors, list) or not raw_divisors:
        raise ResolutionParseError("divisors: expected a nonempty list")
    divisors = []
    for k, raw in enumerate(raw_divisors):
        if not isinstance(raw, dict) or "id" not in raw:
            raise ResolutionParseError(f"divisors[{k}]: expected an object with an id")
        divisors.append(Divisor(id=int(raw["id"]), label=str(raw.get("label", ""))))
    divisors = tuple(divisors)
    l = len(divisors)

    try:
        wrapping = tuple(
            parse_rational(w, f"wrapping_numbers[{i}]")
            for i, w in enumerate(document["wrapping_numbers"])
        )
        epsilon = parse_rational(document["epsilon"], "epsilon")
    except KeyError as exc:
        raise ResolutionParseError(f"missing field: {exc}") from exc
    except RationalFormatError as exc:
        raise ResolutionParseError(str(exc)) from exc

    geometry = None
    if "surface_geometry" in document and document["surface_geometry"] is not None:
        geometry = _parse_geometry(document["surface_geometry"], "surface_geometry")

    if "curves" in document or "nerve" in document or geometry is None:
        try:
            raw_curves = document["curves"]
            raw_nerve = document["nerve"]
        except KeyError as exc:
            raise ResolutionParseError(
                f"missing field {exc} (only omittable when surface_geometry is given)"
            ) from exc
        curves = []
        for k, raw in enumerate(raw_curves):
            if not isinstance(raw, dict):
                raise ResolutionParseError(f"curves[{k}]: expected an object")
            try:
                vec = tuple(
                    parse_rational(x, f"curves[{k}].pair_with_divisors[{j}]")
                    for j, x in enumerate(raw["pair_with_divisors"])
                )
                pk = parse_rational(raw["pair_with_K"], f"curves[{k}].pair_with_K")
            except KeyError as exc:
                raise ResolutionParseError(f"curves[{k}]: missing field {exc}") from exc
            except RationalFormatError as exc:
                raise ResolutionParseError(str(exc)) from exc
            curves.append(
                CurveClass(pair_with_divisors=vec, pair_with_k=pk, label=str(raw.get("label", "")))
            )
        nerve = frozenset(frozenset(int(i) for i in subset) for subset in raw_nerve)
        return ResolutionData(
            complex_dimension=n,
            divisors=divisors,
            nerve=nerve,
            curves=tuple(curves),
            wrapping_numbers=wrapping,
            epsilon=epsilon,
            surface_geometry=geometry,
        )

    if n != 2:
        raise ResolutionValidationError(
            "surface_geometry: only valid when complex_dimension is 2"
        )
    res = from_surface_geometry(
        geometry, wrapping, epsilon, labels=[d.label or f"E{d.id}" for d in divisors]
    )
    if res.divisor_ids != tuple(d.id for d in divisors):
        res = ResolutionData(
            complex_dimension=2,
            divisors=divisors,
            nerve=frozenset(
                frozenset(divisors[i - 1].id for i in subset) for subset in res.nerve
            ),
            curves=res.curves,
            wrapping_numbers=wrapping,
            epsilon=epsilon,
            surface_geometry=geometry,
        )
    return res


def resolution_to_document(res: ResolutionData) -> dict:
    """Plain-dict form of a ResolutionData, suitable for canonical JSON."""
    doc = {
        "complex_dimension": res.complex_dimension,
        "divisors": [{"id": d.id, "label": d.label} for d in res.divisors],
        "nerve": sorted(sorted(subset) for subset in res.nerve),
        "curves": [
            {
                "pair_with_divisors": [format_rational(x) for x in c.pair_with_divisors],
                "pair_with_K": format_rational(c.pair_with_k),
                "label": c.label,
            }
            for c in res.curves
        ],
        "wrapping_numbers": [format_rational(w) for w in res.wrapping_numbers],
        "epsilon": format_rational(res.epsilon),
    }
    if res.surface_geometry is not None:
        geom = res.surface_geometry
        doc["surface_geometry"] = {
            "genus": list(geom.genus),
            "self_intersection": list(geom.self_intersection),
            "cross": [list(row) for row in geom.cross_intersections],
        }
    return doc


def serialize_resolution(res: ResolutionData) -> bytes:
    """Canonical byte serialization (stable key order, "p/q" rationals)."""
    return json.dumps(
        resolution_to_document(res), sort_keys=True, separators=(",", ":")
    ).encode("utf-8")


def resolution_digest(res: ResolutionData) -> str:
    return sha256(serialize_resolution(res)).hexdigest()
