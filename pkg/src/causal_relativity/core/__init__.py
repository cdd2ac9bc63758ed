"""
Numerical core: matrix algebra, validators, seeded generators, the lifted
operator and conditional states
"""

from .tensor import (
    ComplexMatrix,
    add,
    approx_eq,
    as_complex_matrix,
    conj,
    dagger,
    identity,
    kron,
    matmul,
    max_deviation,
    maximally_entangled_vector,
    partial_trace,
    partial_transpose,
    projector,
    psd_sqrt,
    scale,
    trace,
    transpose,
)
from .validation import build_scenario, validate_channel, validate_povm, validate_state
from .random_objects import corrupt_channel, random_channel, random_povm, random_scenario, random_state
from .lifting import (
    apply_channel,
    bipartite_state,
    channel_operator,
    channel_output,
    choi_identity_check,
    ensemble_decompose,
    lifted_operator,
    phi_state,
)
from .conditional_states import (
    acausal_conditional,
    causal_conditional,
    star_product,
    verify_star_equalities,
)

__all__ = [
    "ComplexMatrix",
    "add",
    "approx_eq",
    "as_complex_matrix",
    "conj",
    "dagger",
    "identity",
    "kron",
    "matmul",
    "max_deviation",
    "maximally_entangled_vector",
    "partial_trace",
    "partial_transpose",
    "projector",
    "psd_sqrt",
    "scale",
    "trace",
    "transpose",
    "build_scenario",
    "validate_channel",
    "validate_povm",
    "validate_state",
    "corrupt_channel",
    "random_channel",
    "random_povm",
    "random_scenario",
    "random_state",
    "apply_channel",
    "bipartite_state",
    "channel_operator",
    "channel_output",
    "choi_identity_check",
    "ensemble_decompose",
    "lifted_operator",
    "phi_state",
    "acausal_conditional",
    "causal_conditional",
    "star_product",
    "verify_star_equalities",
]
