"""Exact discrepancy and Reeb-orbit index computations for links of
isolated singularities, plus a Conley-Zehnder index engine for paths of
symplectic matrices."""

from .czindex import (
    Crossing,
    CrossingTolerances,
    DegenerateCrossingError,
    ExtensionLeavesNeighborhoodError,
    IndexValue,
    NotALoopError,
    NotUnitaryError,
    SmallExtensionReport,
    cz_index,
    cz_index_report,
    cz_rational,
    determinant_loop_degree,
    small_extension_bound,
)
from .discrepancy import (
    NEG_INFINITY,
    Classification,
    DiscrepancyVector,
    InconsistentSystemError,
    MinimalDiscrepancy,
    UnderdeterminedSystemError,
    UniquenessCertificate,
    check_uniqueness_certificate,
    compute_discrepancies,
    minimal_discrepancy,
)
from .orbits import (
    NonIntegralDiscrepancyError,
    OrbitFamily,
    OrbitMultiplicity,
    SubsetNotInNerveError,
    TheoremRelation,
    TheoremVerdict,
    cone_model_path,
    cone_orbit_cz,
    enumerate_families,
    family_indices,
    family_period,
    lsft_direct,
    mi_bruteforce,
    mi_closed_form,
    separation_report,
    theorem_verdict,
)
from .paths import (
    BlockSegment,
    DimensionMismatchError,
    EndpointMismatchError,
    ExpQuadraticSegment,
    NonSymplecticSegmentError,
    PathFormatError,
    RotationBlock,
    SampledSegment,
    ShearBlock,
    SymplecticPath,
    catenate,
    conjugate,
    constant_identity,
    direct_sum,
    exp_quadratic_segment,
    load_path,
    path_to_document,
    reverse,
    rotation_segment,
    sampled_segment,
    shear_path,
    shear_segment,
    split_at,
    unitary_loop,
    with_durations,
)
from .report import AnalysisOptions, AnalysisReport, analyze_resolution, render_json, render_text
from .resolution import (
    CurveClass,
    Divisor,
    ResolutionData,
    ResolutionParseError,
    ResolutionValidationError,
    SurfaceCurveGeometry,
    from_surface_geometry,
    load_resolution,
    serialize_resolution,
)

__version__ = "0.1.0"
