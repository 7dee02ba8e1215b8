"""Marked classical Schottky groups and numerical verification of their
length identities."""

from .errors import (
    BranchPoleError,
    CirclesMeetError,
    ConfigError,
    CuspDegenerateError,
    DegenerateFactorizationError,
    DegenerateFixedPointsError,
    ImageIsLineError,
    InsufficientPrefixError,
    NonConvergenceError,
    NotHyperbolicTripleError,
    NotLoxodromicError,
    PathExitsLoxodromyError,
    PathValidationFailedError,
    SchottkyError,
    UncertifiedGroupError,
    ZeroArgumentError,
    ZeroDenominatorError,
)
from .moebius import (
    Circle,
    ComplexLength,
    HalfLength,
    INFINITY,
    Mat2,
    acosh_positive,
    atan_principal,
    atanh_principal,
    complex_length,
    fixed_points,
    half_length,
    inversive_distance,
    is_infinity,
    length_from_trace,
    half_length_from_trace,
    loxodromic_from,
    map_circle,
    mobius_apply,
    plane_distance,
    principal_log,
    sqrt_positive,
)
from .groups import (
    Certificate,
    CircleSystem,
    MarkedSchottkyGroup,
    SchottkyParameters,
    Word,
    all_lifts,
    attempt_classical_certificate,
    certify,
    change_lift,
    commutator_word,
    fricke_trace,
    from_parameters,
    group_from_dict,
    group_to_dict,
    is_fuchsian,
    kappa,
    pants_fuchsian_marking,
    to_parameters,
    torus_fuchsian_marking,
    verify_circle_pairing,
    word_matrix,
)
from .curves import (
    Slope,
    TraceTriple,
    WeierstrassClass,
    all_slopes_up_to,
    christoffel_word,
    commutator_trace,
    slope_traces,
    slopes_up_to,
    trace_of_slope,
    weierstrass_class,
    weierstrass_involutions,
)
from .identities import (
    GapEndpoints,
    IdentityReport,
    Modulus,
    PantsDecomposition,
    TailFit,
    fit_tail_constants,
    frak_h,
    gap_G,
    gap_G_log,
    gap_S,
    gap_S_log,
    gap_endpoints,
    general_mcshane_sum,
    markoff_sum,
    mod_defect,
    normalize_commutator_frame,
    pants_own_decomposition,
    pants_trivial_identity,
    shift_invariance_check,
    tail_estimate,
    torus_decomposition,
    torus_mcshane_sum,
    weierstrass_sum,
)
from .continuation import (
    BranchState,
    DeformationPath,
    PositivityReport,
    continue_half_length,
    path_between,
    path_from_list,
    path_to_list,
    verify_positivity,
)

__version__ = "0.1.0"
