"""Exact test ideal computations over prime fields.

Sparse polynomial arithmetic in F_p[x_1..x_n], reduced Groebner bases,
Frobenius bracket powers and roots, mixed generalized test ideals with
their F-thresholds and jumping data, and tools for sampling and
rasterizing the fractal constancy regions of the test ideal map.
"""

from .algebra import (
    ExponentOverflowError,
    IdealGens,
    PolyParseError,
    Polynomial,
    Ring,
    UnknownVariableError,
    as_fraction,
    grevlex_key,
    ideal_power,
    ideal_product,
    lucas_binomial,
    parse_polynomial,
    poly_pow,
)
from .frobenius import (
    FrobLevel,
    bracket_power,
    ideal_bracket_root,
    poly_bracket_root,
    root_of_power,
)
from .groebner import (
    DEFAULT_LIMITS,
    GroebnerLimits,
    ReducedGB,
    ResourceLimitError,
    buchberger,
    ideal_colon,
    ideal_contains,
    ideal_equal,
    ideal_key,
    ideal_member,
    normal_form,
    reduces_to_zero,
)
from .region import (
    Box,
    CellNotStabilized,
    DigitPoint,
    GridFunction,
    RegionRaster,
    ResolutionMismatchError,
    chi,
    fractal_operator,
    fractal_span_census,
    rasterize,
    region_membership,
    sample_chi,
    staircase_boundary,
    verify_fractal_identity,
)
from .testideal import (
    DEFAULT_TAU_CONFIG,
    FThresholdResult,
    IdealFamily,
    JumpRecord,
    NotStabilizedError,
    PAdicRational,
    TauConfig,
    UnboundedError,
    ZeroRegionError,
    f_threshold,
    jumping_scan,
    p_adic_level,
    reduce_to_single,
    skoda_reduce,
    tau_mixed,
    tau_principal,
    v_number,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "CellNotStabilized",
    "DEFAULT_LIMITS",
    "DEFAULT_TAU_CONFIG",
    "DigitPoint",
    "ExponentOverflowError",
    "FThresholdResult",
    "FrobLevel",
    "GridFunction",
    "GroebnerLimits",
    "IdealFamily",
    "IdealGens",
    "JumpRecord",
    "NotStabilizedError",
    "PAdicRational",
    "PolyParseError",
    "Polynomial",
    "ReducedGB",
    "RegionRaster",
    "ResolutionMismatchError",
    "ResourceLimitError",
    "Ring",
    "TauConfig",
    "UnboundedError",
    "UnknownVariableError",
    "ZeroRegionError",
    "as_fraction",
    "bracket_power",
    "buchberger",
    "chi",
    "f_threshold",
    "fractal_operator",
    "fractal_span_census",
    "grevlex_key",
    "ideal_bracket_root",
    "ideal_colon",
    "ideal_contains",
    "ideal_equal",
    "ideal_key",
    "ideal_member",
    "ideal_power",
    "ideal_product",
    "jumping_scan",
    "lucas_binomial",
    "normal_form",
    "p_adic_level",
    "parse_polynomial",
    "poly_bracket_root",
    "poly_pow",
    "rasterize",
    "reduce_to_single",
    "reduces_to_zero",
    "region_membership",
    "root_of_power",
    "sample_chi",
    "skoda_reduce",
    "staircase_boundary",
    "tau_mixed",
    "tau_principal",
    "v_number",
    "verify_fractal_identity",
]
