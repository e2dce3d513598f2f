"""Discrepancy vector and minimal discrepancy from curve pairing data.

The discrepancies a_j are the unique exact solution of
sum_j a_j (C . E_j) = C . K for every supplied curve class C.  The
minimal discrepancy is min_j a_j when that minimum is >= -1 and the
distinguished NEG_INFINITY state otherwise; arithmetic is never
performed on NEG_INFINITY.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exact_linalg import (
    LinearSystemInconsistent,
    LinearSystemUnderdetermined,
    is_negative_definite,
    leading_principal_minors,
    matrix_rank,
    solve_unique,
)
from .resolution import ResolutionData


class ExtendedValue(Enum):
    """Non-rational states a minimal-index quantity can take."""

    NEG_INFINITY = "-inf"

    def __repr__(self):
        return self.value


NEG_INFINITY = ExtendedValue.NEG_INFINITY


class Classification(Enum):
    TERMINAL = "terminal"
    CANONICAL_NOT_TERMINAL = "canonical_not_terminal"
    LOG_CANONICAL_BOUNDARY = "log_canonical_boundary"
    NOT_LOG_CANONICAL = "not_log_canonical"


class UnderdeterminedSystemError(ValueError):
    """The curve set does not pin down the discrepancies."""

    def __init__(self, nullspace_dim: int, rank: int):
        self.nullspace_dim = nullspace_dim
        self.rank = rank
        super().__init__(
            f"curve pairing system is underdetermined: rank {rank}, "
            f"nullspace dimension {nullspace_dim}; supply more curve classes"
        )


class InconsistentSystemError(ValueError):
    """No exact solution: the data is not numerically Q-Gorenstein as given."""


@dataclass(frozen=True)
class DiscrepancyVector:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("discrepancy vector must be nonempty")

    def minimum(self) -> Fraction:
        return min(self.values)


@dataclass(frozen=True)
class MinimalDiscrepancy:
    value: Fraction | ExtendedValue
    classification: Classification

    @property
    def is_finite(self) -> bool:
        return self.value is not NEG_INFINITY


@dataclass(frozen=True)
class UniquenessCertificate:
    """Rank certificate for the solve, plus the surface-case minor test.

    rank == divisor_count is sufficient for uniqueness of the solution.
    For surface data the leading principal minors of the intersection
    matrix are reported; alternating signs starting negative certify
    negative definiteness.
    """

    rank: int
    divisor_count: int
    surface_minors: tuple[Fraction, ...] | None = None
    negative_definite: bool | None = None

    @property
    def full_rank(self) -> bool:
        return self.rank == self.divisor_count


def compute_discrepancies(res: ResolutionData) -> DiscrepancyVector:
    """Solve the pairing system exactly; unique solutions only.

    Raises UnderdeterminedSystemError (with the nullspace dimension) when
    the curve set has rank < l, and InconsistentSystemError when the
    system admits no solution at all.
    """
    if not res.curves:
        raise UnderdeterminedSystemError(nullspace_dim=res.divisor_count, rank=0)
    matrix = [list(c.pair_with_divisors) for c in res.curves]
    rhs = [c.pair_with_k for c in res.curves]
    try:
        solution = solve_unique(matrix, rhs)
    except LinearSystemUnderdetermined as exc:
        raise UnderdeterminedSystemError(exc.nullspace_dim, exc.rank) from exc
    except LinearSystemInconsistent as exc:
        raise InconsistentSystemError(
            "curve pairing system has no exact solution; the data is not "
            "numerically Q-Gorenstein as presented"
        ) from exc
    return DiscrepancyVector(values=tuple(solution))


def classify(value: Fraction | ExtendedValue) -> Classification:
    if value is NEG_INFINITY:
        return Classification.NOT_LOG_CANONICAL
    if value > 0:
        return Classification.TERMINAL
    if value == 0:
        return Classification.CANONICAL_NOT_TERMINAL
    return Classification.LOG_CANONICAL_BOUNDARY


def minimal_discrepancy(a: DiscrepancyVector) -> MinimalDiscrepancy:
    """min_j a_j when every a_j >= -1, NEG_INFINITY otherwise."""
    m = a.minimum()
    if m < -1:
        return MinimalDiscrepancy(NEG_INFINITY, Classification.NOT_LOG_CANONICAL)
    return MinimalDiscrepancy(m, classify(m))


def check_uniqueness_certificate(res: ResolutionData) -> UniquenessCertificate:
    """Rank of the curve pairing matrix; minor signs for surface data."""
    matrix = [list(c.pair_with_divisors) for c in res.curves]
    rank = matrix_rank(matrix) if matrix else 0
    minors = None
    negdef = None
    if res.surface_geometry is not None:
        intersection = res.surface_geometry.intersection_matrix()
        minors = tuple(leading_principal_minors(intersection))
        negdef = is_negative_definite(intersection)
    return UniquenessCertificate(
        rank=rank,
        divisor_count=res.divisor_count,
        surface_minors=minors,
        negative_definite=negdef,
    )
