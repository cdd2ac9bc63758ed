#!/usr/bin/env python3
"""
Conditional states of a channel and the star product

The acausal conditional state is the Choi state (I (x) T)(|Phi+><Phi+|) with
the normalised |Phi+>; the causal one is its partial transpose on A.
"""

import logging
from typing import Optional

import numpy as np
import numpy.typing as npt

from .lifting import bipartite_state, extend_on_second, lifted_operator
from .tensor import (
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
from ..errors import DimensionError, InternalInvariantError, RankError
from ..models import (
    BipartiteDims,
    ConditionalKind,
    ConditionalState,
    DensityMatrix,
    KrausChannel,
    LiftedOperator,
    StarEqualityReport,
)

logger = logging.getLogger(__name__)


def _checked(cond: ConditionalState, tolerances: Tolerances) -> ConditionalState:
    """Tr_B must be I/d_A for both kinds; the acausal state must also be PSD"""
    d_a = cond.dims.d1
    marginal = approx_eq(partial_trace(cond.mat, cond.dims, 2), identity(d_a) / d_a, tolerances.lifting)
    if not marginal:
        raise InternalInvariantError(
            f"{cond.kind.value} conditional state: Tr_B deviates from I/d_A by {marginal.max_deviation:.3e}"
        )
    if cond.kind is ConditionalKind.ACAUSAL:
        eigenvalues = np.linalg.eigvalsh(cond.mat)
        if eigenvalues[0] < -tolerances.psd_slack(float(np.max(np.abs(eigenvalues)))):
            raise InternalInvariantError(
                f"acausal conditional state is not positive (smallest eigenvalue {eigenvalues[0]:.3e})"
            )
    return cond


def acausal_conditional(channel: KrausChannel, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ConditionalState:
    dims = BipartiteDims(d1=channel.dim_in, d2=channel.dim_out)
    phi_plus = projector(maximally_entangled_vector(channel.dim_in, normalized=True))
    cond = ConditionalState(dims=dims, mat=extend_on_second(channel, phi_plus), kind=ConditionalKind.ACAUSAL)
    return _checked(cond, tolerances)


def causal_conditional(channel: KrausChannel, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ConditionalState:
    acausal = acausal_conditional(channel, tolerances)
    cond = ConditionalState(
        dims=acausal.dims,
        mat=partial_transpose(acausal.mat, acausal.dims, 1),
        kind=ConditionalKind.CAUSAL,
    )
    return _checked(cond, tolerances)


def star_product(
    prior: npt.ArrayLike,
    cond: ConditionalState,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """
    d_A (sqrt(prior) (x) I_B) cond (sqrt(prior) (x) I_B)

    The prior must be a full-rank state on A.

    Raises:
        DimensionError, HermiticityError, TraceError, NegativityError, RankError
    """
    prior = as_complex_matrix(prior, "prior")
    d_a = cond.dims.d1
    if prior.shape != (d_a, d_a):
        raise DimensionError(f"prior has shape {prior.shape}, conditional state expects {d_a}x{d_a}")
    state = validate_state(prior, tolerances)
    if not state.is_full_rank:
        raise RankError(f"prior is not full rank (smallest eigenvalue {state.min_eigenvalue:.3e})")

    side = kron(psd_sqrt(prior, tolerances), identity(cond.dims.d2))
    return as_complex_matrix(d_a * (side @ cond.mat @ side), "star product")


def verify_star_equalities(
    rho: DensityMatrix,
    channel: KrausChannel,
    tol: float = 1e-11,
    lifted: Optional[LiftedOperator] = None,
    tau: Optional[DensityMatrix] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> StarEqualityReport:
    """
    Check rho^T * rho^s = tau_12 and rho * rho^t = T_rho

    The acausal prior rho^T is also checked against Tr_B[tau_12].
    """
    if lifted is None:
        lifted = lifted_operator(rho, channel, tolerances)
    if tau is None:
        tau = bipartite_state(lifted, tolerances)

    prior = transpose(rho.mat)
    prior_check = approx_eq(partial_trace(tau.mat, lifted.dims, 2), prior, tol)
    acausal = approx_eq(star_product(prior, acausal_conditional(channel, tolerances), tolerances), tau.mat, tol)
    causal = approx_eq(star_product(rho.mat, causal_conditional(channel, tolerances), tolerances), lifted.mat, tol)

    report = StarEqualityReport(
        acausal_deviation=acausal.max_deviation,
        causal_deviation=causal.max_deviation,
        prior_deviation=prior_check.max_deviation,
        tolerance=tol,
        passed=bool(acausal and causal and prior_check),
    )
    if not report.passed:
        logger.warning(
            "Star equalities fail: acausal %.3e, causal %.3e, prior %.3e",
            acausal.max_deviation, causal.max_deviation, prior_check.max_deviation,
        )
    return report
