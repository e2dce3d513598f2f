"""Closed-orbit families of the distinguished contact form on the link.

Families are indexed by monoid elements V = sum_{i in I_V} d_i S_i with
I_V in the nerve and d_i >= 1.  Their index data comes from closed
formulas in the discrepancies:

    cz(V)   = 2 sum (a_i + 1) d_i + (1 - |I_V|) / 2
    size(V) = 2n - |I_V| - 1
    lsft(V) = cz - size/2 + (n - 3)  =  2 sum (a_i + 1) d_i - 2

Periods are interval data: center sum d_i (pi eps^2 + lambda_i) with a
declared rational stand-in for pi, radius eps^3 sum d_i.  Indices never
touch pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .discrepancy import (
    NEG_INFINITY,
    DiscrepancyVector,
    ExtendedValue,
    MinimalDiscrepancy,
)
from .paths import SymplecticPath, rotation_segment
from .resolution import ResolutionData

PI_DEFAULT = Fraction(355, 113)
DEFAULT_BUDGET = 8


class SubsetNotInNerveError(ValueError):
    pass


class NonIntegralDiscrepancyError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitMultiplicity:
    """V = sum d_i S_i, stored as sorted (divisor id, d_i) pairs."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("orbit multiplicity must be nonempty")
        ids = [i for i, _ in self.entries]
        if ids != sorted(set(ids)):
            raise ValueError("divisor ids must be sorted and distinct")
        if any(d < 1 for _, d in self.entries):
            raise ValueError("multiplicities must be positive integers")

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "OrbitMultiplicity":
        return cls(tuple(sorted((int(i), int(v)) for i, v in d.items())))

    @property
    def index_set(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.entries)

    @property
    def total(self) -> int:
        return sum(d for _, d in self.entries)

    def label(self) -> str:
        return " + ".join(
            (f"{d}*S{i}" if d != 1 else f"S{i}") for i, d in self.entries
        )


@dataclass(frozen=True)
class OrbitFamily:
    multiplicity: OrbitMultiplicity
    cz: Fraction
    size: int
    lsft: Fraction
    period_center: Fraction | None = None
    period_radius: Fraction | None = None


class TheoremRelation(Enum):
    EQUAL_TWICE_MD = "EQUAL_TWICE_MD"
    HMI_NEGATIVE = "HMI_NEGATIVE"
    MISMATCH = "MISMATCH"


@dataclass(frozen=True)
class TheoremVerdict:
    md: MinimalDiscrepancy
    mi_closed_form: Fraction | ExtendedValue
    mi_bruteforce_at_budget: Fraction
    budget: int
    relation: TheoremRelation
    descent: tuple[Fraction, ...]


def _discrepancy_by_id(a: DiscrepancyVector, divisor_ids: Sequence[int] | None):
    ids = tuple(divisor_ids) if divisor_ids is not None else tuple(
        range(1, len(a.values) + 1)
    )
    if len(ids) != len(a.values):
        raise ValueError("discrepancy vector length does not match divisor ids")
    return dict(zip(ids, a.values))


def family_indices(
    v: OrbitMultiplicity,
    a: DiscrepancyVector,
    n: int,
    nerve=None,
    divisor_ids: Sequence[int] | None = None,
) -> OrbitFamily:
    """Index data (cz, size, lsft) of the family of V; exact rationals."""
    if n < 2:
        raise ValueError("complex dimension must be at least 2")
    if nerve is not None and v.index_set not in nerve:
        raise SubsetNotInNerveError(
            f"index set {sorted(v.index_set)} is not in the nerve: "
            "the corresponding divisors do not intersect"
        )
    by_id = _discrepancy_by_id(a, divisor_ids)
    try:
        weighted = sum(((by_id[i] + 1) * d for i, d in v.entries), Fraction(0))
    except KeyError as exc:
        raise ValueError(f"no discrepancy for divisor id {exc}") from exc
    card = len(v.entries)
    cz = 2 * weighted + Fraction(1 - card, 2)
    size = 2 * n - card - 1
    lsft = cz - Fraction(size, 2) + (n - 3)
    return OrbitFamily(multiplicity=v, cz=cz, size=size, lsft=lsft)


def lsft_direct(v: OrbitMultiplicity, a: DiscrepancyVector, divisor_ids=None) -> Fraction:
    """The independent lsft evaluation 2 sum (a_i + 1) d_i - 2."""
    by_id = _discrepancy_by_id(a, divisor_ids)
    return 2 * sum(((by_id[i] + 1) * d for i, d in v.entries), Fraction(0)) - 2


def family_period(
    v: OrbitMultiplicity,
    wrapping_by_id: dict[int, Fraction],
    epsilon: Fraction,
    pi_rational: Fraction = PI_DEFAULT,
) -> tuple[Fraction, Fraction]:
    """(period center, period radius) of the family of V."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    center = sum(
        (d * (pi_rational * epsilon**2 + Fraction(wrapping_by_id[i])) for i, d in v.entries),
        Fraction(0),
    )
    radius = epsilon**3 * v.total
    return center, radius


def enumerate_multiplicities(nerve, budget: int) -> list[OrbitMultiplicity]:
    """Every V with I_V in the nerve, d_i >= 1 and sum d_i <= budget.

    Deterministic order: by (sum d, lexicographic index set, lexicographic d).
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    out = []
    for subset in nerve:
        ids = tuple(sorted(subset))
        if len(ids) > budget:
            continue
        stack = [(0, budget - len(ids), ())]
        while stack:
            pos, slack, prefix = stack.pop()
            if pos == len(ids):
                out.append(
                    OrbitMultiplicity(tuple(zip(ids, (1 + e for e in prefix))))
                )
                continue
            for extra in range(slack + 1):
                stack.append((pos + 1, slack - extra, prefix + (extra,)))
    out.sort(key=lambda v: (v.total, tuple(sorted(v.index_set)), tuple(d for _, d in v.entries)))
    return out


def enumerate_families(
    res: ResolutionData,
    a: DiscrepancyVector,
    budget: int = DEFAULT_BUDGET,
    pi_rational: Fraction = PI_DEFAULT,
    epsilon: Fraction | None = None,
) -> list[OrbitFamily]:
    """Full family list of the resolution up to the budget, with periods."""
    epsilon = Fraction(epsilon) if epsilon is not None else res.epsilon
    wrapping = dict(zip(res.divisor_ids, res.wrapping_numbers))
    families = []
    for v in enumerate_multiplicities(res.nerve, budget):
        fam = family_indices(
            v, a, res.complex_dimension, nerve=res.nerve, divisor_ids=res.divisor_ids
        )
        center, radius = family_period(v, wrapping, epsilon, pi_rational)
        families.append(
            OrbitFamily(
                multiplicity=v,
                cz=fam.cz,
                size=fam.size,
                lsft=fam.lsft,
                period_center=center,
                period_radius=radius,
            )
        )
    return families


def mi_closed_form(a: DiscrepancyVector) -> Fraction | ExtendedValue:
    """inf of lsft over all families: 2 min_j a_j when that min >= -1."""
    m = a.minimum()
    if m < -1:
        return NEG_INFINITY
    return 2 * m


def mi_bruteforce(
    res: ResolutionData, a: DiscrepancyVector, budget: int = DEFAULT_BUDGET
) -> Fraction:
    """min of lsft over the budget-limited enumeration; oracle for the closed form."""
    families = enumerate_families(res, a, budget)
    return min(f.lsft for f in families)


def theorem_verdict(
    md: MinimalDiscrepancy,
    mi_closed: Fraction | ExtendedValue,
    brute_descent: Sequence[Fraction],
    budget: int,
) -> TheoremVerdict:
    """Relate mi and md per the main-identity case split.

    EQUAL_TWICE_MD: md finite, mi_closed = 2 md = brute force value.
    HMI_NEGATIVE:  md = -inf, brute force negative and strictly decreasing.
    MISMATCH flags a data or implementation fault and is never accepted
    silently (the CLI exits nonzero on it).
    """
    descent = tuple(brute_descent)
    if not descent:
        raise ValueError("need at least one brute-force value")
    final = descent[-1]
    if md.is_finite:
        if mi_closed is not NEG_INFINITY and mi_closed == 2 * md.value and final == mi_closed:
            relation = TheoremRelation.EQUAL_TWICE_MD
        else:
            relation = TheoremRelation.MISMATCH
    else:
        decreasing = all(x > y for x, y in zip(descent, descent[1:]))
        if mi_closed is NEG_INFINITY and final < 0 and decreasing:
            relation = TheoremRelation.HMI_NEGATIVE
        else:
            relation = TheoremRelation.MISMATCH
    return TheoremVerdict(
        md=md,
        mi_closed_form=mi_closed,
        mi_bruteforce_at_budget=final,
        budget=budget,
        relation=relation,
        descent=descent,
    )


def cone_orbit_cz(a: Fraction, k: int, n_fold: int = 1) -> Fraction:
    """Index of the k-fold cone orbit by the literal winding-degree count.

    Over the k-fold orbit the fiber trivialization winds -kN; crossing
    the aN zeros of the global section once per wrap contributes -aNk
    more; negating for the anticanonical side and scaling by 2/N gives
    2(a+1)k.  Requires a in (1/N) Z.
    """
    a = Fraction(a)
    if k < 1 or n_fold < 1:
        raise ValueError("k and N must be positive integers")
    if (a * n_fold).denominator != 1:
        raise NonIntegralDiscrepancyError(
            f"discrepancy {a} is not in (1/{n_fold}) Z"
        )
    zeros_per_wrap = a * n_fold  # integer count of section zeros on one fiber
    degree_fiber = -k * n_fold
    degree_canonical = -zeros_per_wrap * k + degree_fiber
    degree_anticanonical = -degree_canonical
    return Fraction(2, n_fold) * degree_anticanonical


def cone_model_path(a: Fraction, k: int, n_fold: int = 1) -> SymplecticPath:
    """Unitary-loop model of the N-fold trivialization path of a cone orbit.

    The determinant winds (a+1) k N times, realized as one rotating block
    plus N-1 constant blocks in Sp(2N); feeding this to cz_rational gives
    the same value as the winding arithmetic in cone_orbit_cz.
    """
    a = Fraction(a)
    if k < 1 or n_fold < 1:
        raise ValueError("k and N must be positive integers")
    winding = (a + 1) * k * n_fold
    if winding.denominator != 1:
        raise NonIntegralDiscrepancyError(
            f"discrepancy {a} is not in (1/{n_fold}) Z"
        )
    blocks = [(Fraction(0), winding)] + [(Fraction(0), Fraction(0))] * (n_fold - 1)
    return SymplecticPath(2 * n_fold, (rotation_segment(blocks),))


@dataclass(frozen=True)
class SeparationReport:
    """The separation property of the extremal family on one fixture.

    checked collects every enumerated family besides the extremal one
    whose period center lies below the extremal period minus eps^2; the
    property holds when all of them satisfy lsft >= 0 and lsft > 2 md.
    """

    extremal: OrbitFamily
    extremal_period: Fraction
    threshold: Fraction
    checked: tuple[OrbitFamily, ...]
    holds: bool


def separation_report(
    res: ResolutionData,
    a: DiscrepancyVector,
    md: MinimalDiscrepancy,
    budget: int = DEFAULT_BUDGET,
    pi_rational: Fraction = PI_DEFAULT,
    eps_m: Fraction | None = None,
) -> SeparationReport:
    """Check the extremal-family separation on data with a unique argmin.

    Requires md >= 0 attained by exactly one divisor.  eps_m is the
    extremal family's own neighborhood size and defaults to epsilon.
    """
    if not md.is_finite or md.value < 0:
        raise ValueError("separation check needs md >= 0")
    argmins = [i for i, val in zip(res.divisor_ids, a.values) if val == md.value]
    if len(argmins) != 1:
        raise ValueError("separation check needs a unique argmin divisor")
    j = argmins[0]
    eps = res.epsilon
    eps_m = Fraction(eps_m) if eps_m is not None else eps
    extremal_period = pi_rational * eps_m**2 + res.wrapping_number(j)
    threshold = extremal_period - eps**2

    extremal_v = OrbitMultiplicity(((j, 1),))
    families = enumerate_families(res, a, budget, pi_rational)
    extremal = next(f for f in families if f.multiplicity == extremal_v)
    checked = tuple(
        f
        for f in families
        if f.multiplicity != extremal_v and f.period_center < threshold
    )
    holds = all(f.lsft >= 0 and f.lsft > 2 * md.value for f in checked)
    return SeparationReport(
        extremal=extremal,
        extremal_period=extremal_period,
        threshold=threshold,
        checked=checked,
        holds=holds,
    )
