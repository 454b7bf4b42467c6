"""Separating hyperplanes for open convex sets via gauge functionals and
dominated linear extension, with verification certificates."""

from .convexsets import (
    BallCone,
    ConicHullSet,
    ConvexSet,
    HPolyhedron,
    OpenBall,
    OracleSet,
    SymmetrizedBody,
    build_D,
    chebyshev_center,
    conic_hull,
    conic_hull_membership,
    conic_hull_membership_search,
    contains,
    pick_interior_point,
    sample_interior,
)
from .errors import (
    DegenerateError,
    EmptySetError,
    GaugesepError,
    InputError,
    SchemaError,
    SolverError,
)
from .extension import (
    ExtensionState,
    ExtensionStep,
    GammaInterval,
    domination_check,
    extend_full,
    extend_full_state,
    extend_one,
    extend_with_values,
    extension_interval,
    functional_coefficients,
)
from .gauges import (
    AxiomReport,
    ExplicitMaxAbs,
    OracleGauge,
    PolyhedralGauge,
    Seminorm,
    check_seminorm_axioms,
    gauge,
    gauge_from_symmetrized,
    unit_ball,
)
from .geometry import (
    Hyperplane,
    PartialFunctional,
    Subspace,
    as_vector,
    complement_basis,
    decompose,
    kernel_hyperplane,
    span_basis,
    zero_subspace,
)
from .separation import (
    SeparationCertificate,
    SeparationOptions,
    SeparationResult,
    brute_force_2d_normals,
    extend_via_separation,
    remark2_equivalence_check,
    separate,
    verify_separation,
)
from .simplexlp import LPResult, solve_lp

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "BallCone",
    "ConicHullSet",
    "ConvexSet",
    "DegenerateError",
    "EmptySetError",
    "ExplicitMaxAbs",
    "ExtensionState",
    "ExtensionStep",
    "GammaInterval",
    "GaugesepError",
    "HPolyhedron",
    "Hyperplane",
    "InputError",
    "LPResult",
    "OpenBall",
    "OracleGauge",
    "OracleSet",
    "PartialFunctional",
    "PolyhedralGauge",
    "SchemaError",
    "Seminorm",
    "SeparationCertificate",
    "SeparationOptions",
    "SeparationResult",
    "SolverError",
    "Subspace",
    "SymmetrizedBody",
    "as_vector",
    "brute_force_2d_normals",
    "build_D",
    "chebyshev_center",
    "check_seminorm_axioms",
    "complement_basis",
    "conic_hull",
    "conic_hull_membership",
    "conic_hull_membership_search",
    "contains",
    "decompose",
    "domination_check",
    "extend_full",
    "extend_full_state",
    "extend_one",
    "extend_via_separation",
    "extend_with_values",
    "extension_interval",
    "functional_coefficients",
    "gauge",
    "gauge_from_symmetrized",
    "kernel_hyperplane",
    "pick_interior_point",
    "remark2_equivalence_check",
    "sample_interior",
    "separate",
    "span_basis",
    "unit_ball",
    "verify_separation",
    "zero_subspace",
]
