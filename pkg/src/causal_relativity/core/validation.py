#!/usr/bin/env python3
"""
Validators turning raw matrices into DensityMatrix, Povm, KrausChannel and Scenario
"""

import logging
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt

from .tensor import as_complex_matrix, hermitian_eigh
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import (
    CausalRelativityError,
    CompletenessError,
    DimensionError,
    NegativityError,
    OutcomeCountError,
    RankError,
    TraceError,
    TracePreservationError,
)
from ..models import BipartiteDims, DensityMatrix, KrausChannel, Povm, Scenario

logger = logging.getLogger(__name__)


def validate_state(mat: npt.ArrayLike, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """
    Validate a density matrix and cache its spectral facts

    Checks run in the order: shape and finiteness, Hermiticity, unit trace,
    positivity.

    Raises:
        DimensionError, NonFiniteError, HermiticityError, TraceError, NegativityError
    """
    mat = as_complex_matrix(mat, "state")
    if mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"state must be square, got shape {mat.shape}")

    eigenvalues, _ = hermitian_eigh(mat, tolerances)

    tr = complex(np.trace(mat))
    if abs(tr - 1.0) > tolerances.trace:
        raise TraceError(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, expected 1")

    smallest = float(eigenvalues[0])
    largest = float(eigenvalues[-1])
    slack = tolerances.psd_slack(float(np.max(np.abs(eigenvalues))))
    if smallest < -slack:
        raise NegativityError(f"state has eigenvalue {smallest:.3e} below -{slack:.1e}")

    return DensityMatrix(
        dim=mat.shape[0],
        mat=mat,
        min_eigenvalue=smallest,
        max_eigenvalue=largest,
        is_full_rank=smallest >= tolerances.rank,
        is_pure=largest >= 1.0 - tolerances.purity,
    )


def default_labels(prefix: str, count: int) -> list:
    return [f"{prefix}{i}" for i in range(count)]


def validate_povm(
    effects: Sequence[npt.ArrayLike],
    labels: Optional[Sequence[str]] = None,
    label_prefix: str = "a",
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Povm:
    """
    Validate POVM effects (Hermitian, PSD, summing to the identity)

    Errors are located as ``effects[i]`` or ``labels``.
    """
    if len(effects) < 2:
        raise OutcomeCountError(f"a POVM needs at least two effects, got {len(effects)}", field="effects")
    if labels is not None and len(labels) != len(effects):
        raise OutcomeCountError(
            f"{len(labels)} labels for {len(effects)} effects", field="labels"
        )

    mats = []
    for i, effect in enumerate(effects):
        try:
            mat = as_complex_matrix(effect, "effect")
            if mat.shape[0] != mat.shape[1]:
                raise DimensionError(f"effect must be square, got shape {mat.shape}")
            if mats and mat.shape != mats[0].shape:
                raise DimensionError(f"effect has shape {mat.shape}, expected {mats[0].shape}")
            eigenvalues, _ = hermitian_eigh(mat, tolerances)
            slack = tolerances.psd_slack(float(np.max(np.abs(eigenvalues))))
            if eigenvalues[0] < -slack:
                raise NegativityError(f"effect has eigenvalue {eigenvalues[0]:.3e} below -{slack:.1e}")
        except CausalRelativityError as e:
            raise e.with_field(f"effects[{i}]")
        mats.append(mat)

    dim = mats[0].shape[0]
    residual = float(np.linalg.norm(sum(mats) - np.eye(dim), ord="fro"))
    if residual > tolerances.completeness:
        raise CompletenessError(f"effects sum to the identity only within {residual:.3e}", field="effects")

    return Povm(
        dim=dim,
        effects=tuple(mats),
        labels=list(labels) if labels is not None else default_labels(label_prefix, len(mats)),
    )


def validate_channel(
    kraus: Sequence[npt.ArrayLike],
    dim_in: int,
    dim_out: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> KrausChannel:
    """Validate Kraus operators of a trace-preserving map dim_in -> dim_out"""
    if not kraus:
        raise DimensionError("a channel needs at least one Kraus operator", field="kraus")

    ops = []
    for m, op in enumerate(kraus):
        try:
            mat = as_complex_matrix(op, "Kraus operator")
            if mat.shape != (dim_out, dim_in):
                raise DimensionError(f"Kraus operator has shape {mat.shape}, expected {(dim_out, dim_in)}")
        except CausalRelativityError as e:
            raise e.with_field(f"kraus[{m}]")
        ops.append(mat)

    stacked = np.stack(ops)
    gram = np.einsum("mai,maj->ij", np.conj(stacked), stacked)
    deviation = float(np.max(np.abs(gram - np.eye(dim_in))))
    if deviation > tolerances.trace_preservation:
        raise TracePreservationError(
            f"sum of K^dagger K differs from the identity by {deviation:.3e}", field="kraus"
        )

    return KrausChannel(dim_in=dim_in, dim_out=dim_out, kraus=tuple(ops))


def build_scenario(
    name: str,
    rho: DensityMatrix,
    channel: KrausChannel,
    povm_a: Povm,
    povm_b: Povm,
    povm_a_alt: Optional[Povm] = None,
    pure_fallback: bool = False,
    description: Optional[str] = None,
) -> Scenario:
    """
    Assemble a Scenario from validated parts, cross-checking dimensions and rank

    A scenario needs a full-rank state unless it is marked ``pure_fallback``,
    in which case the state must be pure.
    """
    d1, d2 = channel.dim_in, channel.dim_out
    if d1 < 2 or d2 < 2:
        raise DimensionError(f"both systems need dimension >= 2, got ({d1}, {d2})", field="kraus")
    parts = [
        ("rho", rho.dim, d1),
        ("povm_a", povm_a.dim, d1),
        ("povm_b", povm_b.dim, d2),
    ]
    if povm_a_alt is not None:
        parts.append(("povm_a_alt", povm_a_alt.dim, d1))
    for field, actual, expected in parts:
        if actual != expected:
            raise DimensionError(f"dimension {actual} does not match the channel ({expected})", field=field)

    if pure_fallback and not rho.is_pure:
        raise RankError("a pure-fallback scenario needs a pure state", field="rho")
    if not pure_fallback and not rho.is_full_rank:
        raise RankError(
            f"state is not full rank (smallest eigenvalue {rho.min_eigenvalue:.3e})", field="rho"
        )

    return Scenario(
        name=name,
        dims=BipartiteDims(d1=d1, d2=d2),
        rho=rho,
        channel=channel,
        povm_a=povm_a,
        povm_b=povm_b,
        povm_a_alt=povm_a_alt,
        pure_fallback=pure_fallback,
        description=description,
    )
