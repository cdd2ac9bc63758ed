#!/usr/bin/env python3
"""
From a state and a channel to the bipartite objects the observers use:
the preparation ensemble, the channel output, the lifted operator T_rho,
the space-like state tau_12 and the deformed maximally entangled vector |Phi>.
"""

import logging
from typing import Optional

import numpy as np

from .tensor import (
    ComplexMatrix,
    approx_eq,
    as_complex_matrix,
    identity,
    kron,
    maximally_entangled_vector,
    partial_trace,
    partial_transpose,
    projector,
    psd_sqrt,
    transpose,
)
from .validation import validate_state
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import CausalRelativityError, DimensionError, InternalInvariantError, RankError
from ..models import (
    BipartiteDims,
    DensityMatrix,
    Ensemble,
    KrausChannel,
    LiftedOperator,
    MatrixComparison,
    Povm,
)

logger = logging.getLogger(__name__)


def _require_full_rank(rho: DensityMatrix, what: str) -> None:
    if not rho.is_full_rank:
        raise RankError(f"{what} needs a full-rank state (smallest eigenvalue {rho.min_eigenvalue:.3e})")


def _require_channel_input(rho: DensityMatrix, channel: KrausChannel) -> None:
    if rho.dim != channel.dim_in:
        raise DimensionError(f"state has dimension {rho.dim}, channel expects {channel.dim_in}")


def ensemble_decompose(
    rho: DensityMatrix,
    povm_a: Povm,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Ensemble:
    """
    Split rho into the ensemble sum_i p_i sigma_i induced by POVM A

    p_i = Tr[a_i rho] and sigma_i = sqrt(rho) a_i sqrt(rho) / p_i. Outcomes with
    p_i below the zero tolerance get no member and are listed as degenerate.
    """
    _require_full_rank(rho, "ensemble decomposition")
    if povm_a.dim != rho.dim:
        raise DimensionError(f"POVM acts on dimension {povm_a.dim}, state has {rho.dim}")

    root = psd_sqrt(rho.mat, tolerances)
    weights, members, member_indices, degenerate = [], [], [], []
    for i, effect in enumerate(povm_a.effects):
        weight = float(np.trace(effect @ rho.mat).real)
        weights.append(weight)
        if weight < tolerances.zero:
            degenerate.append(i)
            continue
        unnormalized = root @ effect @ root
        try:
            member = validate_state(unnormalized / np.trace(unnormalized).real, tolerances)
        except CausalRelativityError as e:
            raise InternalInvariantError(f"ensemble member {i} is not a state: {e}") from e
        members.append(member)
        member_indices.append(i)

    if degenerate:
        logger.warning("Outcomes %s of POVM A never happen on this state", degenerate)

    return Ensemble(
        weights=weights,
        members=members,
        member_indices=member_indices,
        degenerate_outcomes=degenerate,
        source_state=rho,
        source_povm=povm_a,
    )


def channel_output(channel: KrausChannel, mat: ComplexMatrix) -> ComplexMatrix:
    """sum_m K^m M K^m^dagger on an arbitrary input operator, without validation"""
    if mat.shape != (channel.dim_in, channel.dim_in):
        raise DimensionError(f"operator of shape {mat.shape} does not fit channel input {channel.dim_in}")
    stacked = channel.stacked
    return as_complex_matrix(np.einsum("mab,bc,mdc->ad", stacked, mat, np.conj(stacked)), "channel output")


def apply_channel(
    channel: KrausChannel,
    rho: DensityMatrix,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """The evolved state T(rho)"""
    _require_channel_input(rho, channel)
    out = channel_output(channel, rho.mat)
    try:
        return validate_state(out, tolerances)
    except CausalRelativityError as e:
        raise InternalInvariantError(f"channel output is not a state: {e}") from e


def channel_operator(channel: KrausChannel) -> ComplexMatrix:
    """
    sum_m K^m (x) K^m^dagger written as an operator on S1 (x) S2

    Entry ((c, a), (b, d)) is sum_m K^m_ab conj(K^m_dc); the identity channel
    gives the swap operator.
    """
    stacked = channel.stacked
    tensor = np.einsum("mab,mdc->cabd", stacked, np.conj(stacked))
    n = channel.dim_in * channel.dim_out
    return as_complex_matrix(np.reshape(tensor, (n, n)), "channel operator")


def lifted_operator(
    rho: DensityMatrix,
    channel: KrausChannel,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> LiftedOperator:
    """
    T_rho = (sqrt(rho) (x) I_2) [sum_m K^m (x) K^m^dagger] (sqrt(rho) (x) I_2)

    Raises InternalInvariantError when Tr_1[T_rho] differs from T(rho).
    """
    _require_full_rank(rho, "the lifted operator")
    _require_channel_input(rho, channel)

    dims = BipartiteDims(d1=channel.dim_in, d2=channel.dim_out)
    side = kron(psd_sqrt(rho.mat, tolerances), identity(dims.d2))
    mat = as_complex_matrix(side @ channel_operator(channel) @ side, "lifted operator")

    check = approx_eq(partial_trace(mat, dims, 1), channel_output(channel, rho.mat), tolerances.lifting)
    if not check:
        raise InternalInvariantError(
            f"Tr_1[T_rho] differs from T(rho) by {check.max_deviation:.3e} at {check.index}"
        )
    return LiftedOperator(dims=dims, mat=mat)


def bipartite_state(lifted: LiftedOperator, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """tau_12 = T_rho^{T_1}, the state the space-like observer assigns to S1 (x) S2"""
    tau = partial_transpose(lifted.mat, lifted.dims, 1)
    try:
        return validate_state(tau, tolerances)
    except CausalRelativityError as e:
        raise InternalInvariantError(f"partial transpose of T_rho is not a state: {e}") from e


def phi_state(rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """|Phi> = (sqrt(rho^T) (x) I) sum_j |j>|j>, a unit vector on S1 (x) S1'"""
    root = psd_sqrt(transpose(rho.mat), tolerances)
    vec = kron(root, identity(rho.dim)) @ maximally_entangled_vector(rho.dim, normalized=False)
    vec.setflags(write=False)
    return vec


def extend_on_second(channel: KrausChannel, bipartite: ComplexMatrix) -> ComplexMatrix:
    """(I (x) T) applied to an operator on S1 (x) S1', with Kraus operators I_1 (x) K^m"""
    d = channel.dim_in
    if bipartite.shape != (d * d, d * d):
        raise DimensionError(f"operator of shape {bipartite.shape} is not on {d} x {d} systems")
    out = np.zeros((d * channel.dim_out, d * channel.dim_out), dtype=np.complex128)
    for op in channel.kraus:
        extended = np.kron(np.eye(d), op)
        out += extended @ bipartite @ np.conj(extended).T
    return as_complex_matrix(out, "extended channel output")


def choi_identity_check(
    rho: DensityMatrix,
    channel: KrausChannel,
    tol: float = 1e-11,
    lifted: Optional[LiftedOperator] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> MatrixComparison:
    """
    Compare (I (x) T)(|Phi><Phi|) with the partial transpose of T_rho

    The left side is built from |Phi> and the extended Kraus operators; the
    right side from ``lifted`` (computed from ``rho`` and ``channel`` when not given).
    """
    _require_full_rank(rho, "the Choi identity check")
    _require_channel_input(rho, channel)
    left = extend_on_second(channel, projector(phi_state(rho, tolerances)))
    if lifted is None:
        lifted = lifted_operator(rho, channel, tolerances)
    right = partial_transpose(lifted.mat, lifted.dims, 1)
    return approx_eq(left, right, tol)
