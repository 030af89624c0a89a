"""Exact-arithmetic toolkit for line configurations on smooth hypersurfaces in P^3.

Constructs the classical line arrangements (explicit cyclotomic
coordinates for Fermat hypersurfaces, abstract incidence profiles for the
rest), computes singular-locus statistics by exact pairwise intersection,
and evaluates linear Harbourne constants together with Miyaoka-type
negativity bounds, everything as exact rational numbers.
"""

__version__ = "0.1.0"

from .catalog import (
    Arrangement,
    IncidenceProfile,
    ProfileError,
    cubic_profile,
    fermat_lines,
    fermat_profile,
    max_lines_bound,
    on_surface,
    rams_profile,
    schur_profile,
)
from .exactnum import (
    ConductorMismatch,
    CycloNum,
    cyclotomic_polynomial,
    euler_phi,
    nth_roots_of_minus_one,
    zeta,
)
from .harbourne import (
    HarbourneReport,
    InapplicableDegree,
    MiyaokaResult,
    UndefinedConstant,
    analyze_profile,
    bauer_search,
    cubic_h,
    extremal_profile_search,
    fermat_h_closed,
    harbourne_linear,
    harbourne_lower_bound,
    line_self_intersection,
    miyaoka_check,
    rams_h_closed,
    strict_transform_sq,
    strict_transform_sq_lower,
)
from .incidence import (
    IdentityReport,
    ScanResult,
    SingularPoint,
    incidence_count,
    profile_from_arrangement,
    scan_arrangement,
    singular_points,
    valency_consistent,
    verify_identities,
)
from .projgeom import (
    ProjLine,
    ProjPoint,
    line_intersection,
    line_through,
    normalize_point,
    plucker_pairing,
    point_on_line,
)
from .serialize import SchemaError, load_custom_lines, load_custom_profile

__all__ = [
    "Arrangement",
    "ConductorMismatch",
    "CycloNum",
    "HarbourneReport",
    "IdentityReport",
    "InapplicableDegree",
    "IncidenceProfile",
    "MiyaokaResult",
    "ProfileError",
    "ProjLine",
    "ProjPoint",
    "ScanResult",
    "SchemaError",
    "SingularPoint",
    "UndefinedConstant",
    "analyze_profile",
    "bauer_search",
    "cubic_h",
    "cubic_profile",
    "cyclotomic_polynomial",
    "euler_phi",
    "extremal_profile_search",
    "fermat_h_closed",
    "fermat_lines",
    "fermat_profile",
    "harbourne_linear",
    "harbourne_lower_bound",
    "incidence_count",
    "line_intersection",
    "line_self_intersection",
    "line_through",
    "load_custom_lines",
    "load_custom_profile",
    "max_lines_bound",
    "miyaoka_check",
    "normalize_point",
    "nth_roots_of_minus_one",
    "on_surface",
    "plucker_pairing",
    "point_on_line",
    "profile_from_arrangement",
    "rams_h_closed",
    "rams_profile",
    "scan_arrangement",
    "schur_profile",
    "singular_points",
    "strict_transform_sq",
    "strict_transform_sq_lower",
    "valency_consistent",
    "verify_identities",
    "zeta",
]
