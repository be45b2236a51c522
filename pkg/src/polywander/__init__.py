"""Exact-arithmetic analysis of finite point sets on the circle under the
angle d-tupling map f(theta) = d*theta mod 1."""

from .angles import (
    DEFAULT_BUDGET,
    DEFAULT_MAX_DIGITS,
    EQ,
    GT,
    LT,
    Angle,
    AngleEnclosure,
    Approx,
    PrecisionBudget,
    Value,
    arc_length,
    compare,
    format_angle,
    generator_names,
    iterate_angle,
    map_angle,
    parse_angle,
    refine,
    register_generator,
    shift_angle,
)
from .errors import (
    AngleSyntaxError,
    AssertionBreach,
    BaseMismatchError,
    ChordsCrossError,
    CrossPairLinked,
    DegenerateChordError,
    EnclosureTooWide,
    NoBurnInWithinHorizon,
    NoHoleExceeds1OverD,
    NonInjectiveAtStep,
    NotCertifiedWandering,
    NotInjectiveError,
    PolywanderError,
    PreconditionError,
    TieUnresolvable,
    TooFewJumps,
    UnknownGeneratorError,
    UnresolvedComparison,
)
from .geometry import (
    Arc,
    Chord,
    CriticalStrip,
    HoleProfile,
    OrientationCertificate,
    Polygon,
    critical_strip,
    critical_value,
    hole_containing,
    hole_profile,
    image_hole,
    is_critical,
    is_orientation_preserving,
    remainder,
    rho,
    unlinked,
)
from .orbit import (
    CriticalValueTrace,
    GapStats,
    JumpLog,
    JumpRecord,
    OrbitRecord,
    WanderingCertificate,
    certify_wandering,
    critical_hole_index,
    detect_jumps,
    find_burn_in,
    iterate_orbit,
    jump_gap_stats,
    track_critical_value,
)
from .recurrence import (
    CandidateLeaf,
    CollectionReport,
    OmegaApproximation,
    PairStatus,
    RecurrenceEvidence,
    TheoremReport,
    extract_jumping_leaves,
    hausdorff_bins,
    narrowness_evidence,
    omega_approx,
    orbit_disjointness,
    recurrence_evidence,
    verify_collection_bound,
    verify_theorem1,
)
from .render import render_svg

__version__ = "0.1.0"
