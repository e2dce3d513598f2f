"""Full analysis pipeline and deterministic report rendering.

analyze_resolution runs discrepancies -> md -> family enumeration -> mi
-> verdict on one ResolutionData.  Rendering is byte-deterministic for
a fixed input and option set: rationals print as p/q, keys are sorted,
and nothing machine-dependent (paths, timestamps) enters the output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .discrepancy import (
    NEG_INFINITY,
    DiscrepancyVector,
    MinimalDiscrepancy,
    UniquenessCertificate,
    check_uniqueness_certificate,
    compute_discrepancies,
    minimal_discrepancy,
)
from .orbits import (
    DEFAULT_BUDGET,
    PI_DEFAULT,
    OrbitFamily,
    TheoremRelation,
    TheoremVerdict,
    enumerate_families,
    mi_closed_form,
    theorem_verdict,
)
from .rationals import format_rational
from .resolution import ResolutionData, resolution_digest

CONNECTEDNESS_WARNING = (
    "intersections of divisor collections are assumed connected; "
    "the data model does not verify connectedness"
)


@dataclass(frozen=True)
class AnalysisOptions:
    budget: int = DEFAULT_BUDGET
    pi_rational: Fraction = PI_DEFAULT
    check_theorem: bool = True


@dataclass(frozen=True)
class AnalysisReport:
    digest: str
    divisor_count: int
    complex_dimension: int
    divisor_labels: tuple[str, ...]
    discrepancies: DiscrepancyVector
    certificate: UniquenessCertificate
    md: MinimalDiscrepancy
    families: tuple[OrbitFamily, ...]
    mi_closed: object
    descent: tuple[Fraction, ...]
    verdict: TheoremVerdict | None
    options: AnalysisOptions
    warnings: tuple[str, ...]


def analyze_resolution(res: ResolutionData, options: AnalysisOptions = AnalysisOptions()) -> AnalysisReport:
    a = compute_discrepancies(res)
    certificate = check_uniqueness_certificate(res)
    md = minimal_discrepancy(a)
    families = enumerate_families(res, a, options.budget, options.pi_rational)
    mi_closed = mi_closed_form(a)
    descent = []
    for budget in range(1, options.budget + 1):
        descent.append(min(f.lsft for f in families if f.multiplicity.total <= budget))
    verdict = None
    if options.check_theorem:
        verdict = theorem_verdict(md, mi_closed, descent, options.budget)
    warnings = [CONNECTEDNESS_WARNING]
    if certificate.negative_definite is False:
        warnings.append(
            "surface intersection matrix is not negative definite; the "
            "uniqueness certificate rests on rank alone"
        )
    return AnalysisReport(
        digest=resolution_digest(res),
        divisor_count=res.divisor_count,
        complex_dimension=res.complex_dimension,
        divisor_labels=tuple(d.label for d in res.divisors),
        discrepancies=a,
        certificate=certificate,
        md=md,
        families=tuple(families),
        mi_closed=mi_closed,
        descent=tuple(descent),
        verdict=verdict,
        options=options,
        warnings=tuple(warnings),
    )


def _fmt_extended(value) -> str:
    if value is NEG_INFINITY:
        return "-inf"
    return format_rational(value)


def render_text(report: AnalysisReport) -> str:
    opt = report.options
    lines = []
    lines.append(f"input sha256: {report.digest}")
    lines.append(
        f"input summary: {report.divisor_count} divisor(s), complex dimension "
        f"{report.complex_dimension}"
    )
    disc = ", ".join(
        f"{label or 'E' + str(i + 1)}: {format_rational(v)}"
        for i, (label, v) in enumerate(
            zip(report.divisor_labels, report.discrepancies.values)
        )
    )
    lines.append(f"discrepancies: {disc}")
    cert = report.certificate
    cert_line = f"uniqueness: rank {cert.rank}/{cert.divisor_count}"
    if cert.surface_minors is not None:
        minors = ", ".join(format_rational(m) for m in cert.surface_minors)
        state = "negative definite" if cert.negative_definite else "NOT negative definite"
        cert_line += f"; intersection matrix {state} (leading minors: {minors})"
    lines.append(cert_line)
    lines.append(
        f"minimal discrepancy: {_fmt_extended(report.md.value)} "
        f"({report.md.classification.value})"
    )
    lines.append(
        f"families up to budget {opt.budget} "
        f"(pi ~ {format_rational(opt.pi_rational)}):"
    )
    lines.append("  V | sum d | cz | size | lsft | period center | period radius")
    for fam in report.families:
        lines.append(
            "  "
            + " | ".join(
                [
                    fam.multiplicity.label(),
                    str(fam.multiplicity.total),
                    format_rational(fam.cz),
                    str(fam.size),
                    format_rational(fam.lsft),
                    format_rational(fam.period_center),
                    format_rational(fam.period_radius),
                ]
            )
        )
    lines.append(f"mi (closed form): {_fmt_extended(report.mi_closed)}")
    descent = ", ".join(format_rational(x) for x in report.descent)
    lines.append(f"mi (brute force) by budget 1..{opt.budget}: {descent}")
    if report.verdict is not None:
        lines.append(f"verdict: {report.verdict.relation.value}")
    else:
        lines.append("verdict: skipped (--no-check-theorem)")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def report_to_document(report: AnalysisReport) -> dict:
    cert = report.certificate
    doc = {
        "input": {
            "sha256": report.digest,
            "divisor_count": report.divisor_count,
            "complex_dimension": report.complex_dimension,
            "divisor_labels": list(report.divisor_labels),
        },
        "options": {
            "budget": report.options.budget,
            "pi_rational": format_rational(report.options.pi_rational),
            "check_theorem": report.options.check_theorem,
        },
        "discrepancies": [format_rational(v) for v in report.discrepancies.values],
        "uniqueness_certificate": {
            "rank": cert.rank,
            "divisor_count": cert.divisor_count,
            "full_rank": cert.full_rank,
            "surface_minors": None
            if cert.surface_minors is None
            else [format_rational(m) for m in cert.surface_minors],
            "negative_definite": cert.negative_definite,
        },
        "minimal_discrepancy": {
            "value": _fmt_extended(report.md.value),
            "classification": report.md.classification.value,
        },
        "families": [
            {
                "multiplicities": [[i, d] for i, d in fam.multiplicity.entries],
                "total": fam.multiplicity.total,
                "cz": format_rational(fam.cz),
                "size": fam.size,
                "lsft": format_rational(fam.lsft),
                "period_center": format_rational(fam.period_center),
                "period_radius": format_rational(fam.period_radius),
            }
            for fam in report.families
        ],
        "mi_closed_form": _fmt_extended(report.mi_closed),
        "mi_bruteforce_descent": [format_rational(x) for x in report.descent],
        "verdict": None if report.verdict is None else report.verdict.relation.value,
        "warnings": list(report.warnings),
    }
    return doc


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_document(report), sort_keys=True, indent=1) + "\n"


def exit_code_for(verdict: TheoremVerdict | None) -> int:
    if verdict is None:
        return 0
    if verdict.relation is TheoremRelation.MISMATCH:
        return 2
    return 0
