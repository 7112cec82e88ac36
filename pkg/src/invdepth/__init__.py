"""Depth of modular invariant rings F[V]^G over prime fields, with executable theorem checks."""

__version__ = "0.1.0"

from .coaction import TensorElement, coaction, coassociativity_check, counit_check, restrict_to_subspace
from .depth import (
    DepthReport,
    KoszulProfile,
    RegularSequenceCertificate,
    ZeroDivisorWitness,
    choose_hsop,
    depth_report,
    freeness_test,
    is_regular_sequence,
    koszul_depth,
    module_regular_sequence_check,
    regular_in_polynomial_ring,
)
from .errors import (
    CapacityError,
    GroupTooLargeError,
    InconsistencyError,
    InvDepthError,
    PreconditionError,
    ScenarioError,
    StructuralError,
    TooManySubspacesError,
    UnsupportedCharacteristicError,
)
from .groebner import MonomialOrder, buchberger, is_nonzerodivisor, krull_dimension, normal_form
from .groups import (
    MatrixGroup,
    SubgroupHandle,
    Subspace,
    enumerate_group,
    fixed_subspace,
    pointwise_stabilizer,
    subspaces_of_dim,
    sylow_subgroup,
)
from .invariants import (
    InvariantBasis,
    dickson_invariants,
    hilbert_coefficients,
    invariant_basis,
    minimal_generators,
    transfer,
)
from .polynomial import (
    FieldPrime,
    GradingConvention,
    Polynomial,
    apply_linear_substitution,
    monomial_basis,
    multiply,
    steenrod_total_square,
)
from .theorems import (
    TheoremVerdict,
    carlson_detection_check,
    comodule_identity_check,
    duflot_bound_check,
    duflot_lifting_check,
    es_comparison,
    lifting_search,
    stabilizer_component_check,
)
