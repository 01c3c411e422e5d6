"""Diagonal double Kodaira structures on extra-special p-groups.

Exact construction and verification of the generating tuples behind double
Kodaira fibrations, together with big-integer arithmetic for the surface
invariants they produce (Chern numbers, signature, slope, genera).
"""

from .zpfield import (
    FieldElement,
    FieldMatrix,
    FieldVector,
    is_prime,
    require_prime_modulus,
)
from .pcgroup import (
    DEFAULT_CLOSURE_CAP,
    ClosureResult,
    DescriptorMismatchError,
    ExtraSpecialClass,
    GroupDescriptor,
    GroupElement,
    HeisMatrix,
    SpanClosure,
    UnsupportedClassificationError,
    center_rank,
    classify_extra_special,
    commutator,
    heis_oracle_check,
    paired_antisymmetric_matrix,
    span_closure,
    standard_commutator_matrix,
    subgroup_closure,
)
from .kodaira_structures import (
    KodairaStructure,
    LambdaMuChoice,
    Strength,
    VerificationReport,
    Violation,
    build_omega,
    class2_pairing,
    class2_pairing_check,
    construct_nonstrong,
    construct_strong,
    enumerate_lambda_mu,
    involution_dual,
    relation_violations_class2,
    relation_violations_full,
    report_to_json_dict,
    select_lambda_mu,
    structure_from_json_dict,
    structure_to_json_dict,
    verify_class2,
    verify_full,
)
from .surface_geometry import (
    FeasibilityVerdict,
    FeasibleSlope,
    FibrationData,
    KappaRow,
    SlopeRow,
    SlopeTable,
    SurfaceInvariants,
    compute_invariants,
    distinct_prime_factors,
    feasibility_check,
    feasibility_scan,
    invariants_for,
    kappa_lower_bound_table,
    omega_prime_factors,
    rational_sqrt,
    slope_table,
)

__version__ = "0.1.0"
