"""Yellowstone permutation toolkit.

The Yellowstone permutation (OEIS A098550) starts 1, 2, 3 and continues
with the smallest unused positive integer that shares a factor with the
term two back and is coprime to the previous term.  This package
generates it (and its generalized variants) at scale, classifies terms,
checks the conjectured alternation structure, fits the growth curves,
and analyzes orbits of the permutation.
"""

__version__ = "0.1.0"

from .classify import (
    FrontierSnapshot,
    HypothesisAReport,
    TermClass,
    TermClassification,
    TermKind,
    check_hypothesis_a,
    classify_terms,
    frontier_track,
    kappa_distribution,
)
from .errors import (
    BFileFormatError,
    InsufficientDataError,
    InternalConsistencyError,
    InternalLimitError,
    InvalidArgumentError,
    OutOfRangeError,
    ResourceLimitError,
    YellowstoneError,
)
from .generator import (
    Domain,
    SequenceState,
    VariantConfig,
    VerificationReport,
    generate,
    verify_prefix,
)
from .growthmodel import GrowthModel, ResidualSeries, alpha_estimate, curve_value, residuals
from .numtheory import SieveTable, build_sieve, gcd, least_odd_prime_not_dividing
from .orbits import (
    CycleRecord,
    CycleSurvey,
    OrbitReport,
    OrbitStatus,
    enumerate_cycles,
    find_fixed_points,
    orbit_offsets,
    trace_orbit,
)
from .variants import MergeResult, detect_merge, make_variant

__all__ = [
    "__version__",
    "Domain",
    "VariantConfig",
    "SequenceState",
    "VerificationReport",
    "generate",
    "verify_prefix",
    "SieveTable",
    "build_sieve",
    "gcd",
    "least_odd_prime_not_dividing",
    "TermKind",
    "TermClass",
    "TermClassification",
    "classify_terms",
    "HypothesisAReport",
    "check_hypothesis_a",
    "kappa_distribution",
    "FrontierSnapshot",
    "frontier_track",
    "GrowthModel",
    "curve_value",
    "ResidualSeries",
    "residuals",
    "alpha_estimate",
    "OrbitStatus",
    "OrbitReport",
    "trace_orbit",
    "orbit_offsets",
    "find_fixed_points",
    "CycleRecord",
    "CycleSurvey",
    "enumerate_cycles",
    "MergeResult",
    "detect_merge",
    "make_variant",
    "YellowstoneError",
    "InvalidArgumentError",
    "OutOfRangeError",
    "ResourceLimitError",
    "InternalLimitError",
    "InsufficientDataError",
    "InternalConsistencyError",
    "BFileFormatError",
]
