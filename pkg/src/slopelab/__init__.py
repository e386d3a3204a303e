"""Exact slope bounds for hyperelliptic fibrations with positive relative irregularity."""

from .cone import (
    ConeProgram,
    LinearForm,
    OptimizationResult,
    build_constraint,
    build_program,
    check_certificate,
    extremal_ray,
    minimize,
    verify_sharpness,
)
from .enumeration import brute_force_minimum
from .errors import (
    CrossCheckFailure,
    ExpectationFailure,
    ForestError,
    Infeasible,
    LocallyTrivial,
    NegativeChi,
    ProfileError,
    SlopelabError,
    Unbounded,
)
from .families import (
    ExampleReport,
    ProductQuotientParams,
    RuledCoverParams,
    build_product_quotient,
    build_ruled_cover,
    hirzebruch_intersection,
)
from .invariants import (
    CoefficientSet,
    GenusProfile,
    RelativeInvariants,
    SingularityIndexVector,
    bound_difference,
    bound_gap,
    conjecture_bound,
    lambda_bound,
    minus_one_count,
    n_from_indices,
    proof_coefficients,
    relative_invariants,
    slope,
    validate_profile,
    xiao_coefficients,
)
from .resolution import (
    SingularityForest,
    SingularityNode,
    classify_indices,
    compare_paths,
    index_vector,
    resolve_invariants,
    s2_from_n,
    validate_forest,
)

__version__ = "0.1.0"
