#!/usr/bin/env python3
"""
Seeded random states, POVMs, channels and scenarios

Every generator is a pure function of its arguments: the same seed gives a
bitwise identical object.
"""

import logging

import numpy as np

from .tensor import as_complex_matrix
from .validation import build_scenario, validate_channel, validate_povm, validate_state
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import DimensionError, RankError, SingularityError
from ..models import DensityMatrix, KrausChannel, Povm, Scenario

logger = logging.getLogger(__name__)

MAX_RETRIES = 8


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Matrix of independent standard complex Gaussians"""
    return (rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))) / np.sqrt(2)


def random_state(
    dim: int,
    seed: int,
    ensure_full_rank: bool = True,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> DensityMatrix:
    """Ginibre state G G^dagger / Tr[G G^dagger], mixed with I/dim if it comes out rank deficient"""
    if dim < 2:
        raise DimensionError(f"dimension must be >= 2, got {dim}")
    rng = np.random.default_rng(seed)
    g = ginibre(rng, dim, dim)
    rho = g @ np.conj(g).T
    rho = rho / np.trace(rho).real
    rho = 0.5 * (rho + np.conj(rho).T)

    if ensure_full_rank and np.linalg.eigvalsh(rho)[0] < tolerances.rank:
        mix = tolerances.full_rank_mix
        logger.debug("random_state(dim=%d, seed=%d) is rank deficient, mixing with I/d", dim, seed)
        rho = (1.0 - mix) * rho + mix * np.eye(dim) / dim

    return validate_state(rho, tolerances)


def random_povm(
    dim: int,
    n_outcomes: int,
    seed: int,
    label_prefix: str = "a",
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Povm:
    """
    Effects S^{-1/2} M_i S^{-1/2} with M_i = G_i G_i^dagger and S = sum_i M_i

    A numerically singular S is redrawn from the same seeded stream, up to MAX_RETRIES times.
    """
    if n_outcomes < 2:
        raise DimensionError(f"a POVM needs at least two outcomes, got {n_outcomes}")

    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RETRIES + 1):
        blocks = [ginibre(rng, dim, dim) for _ in range(n_outcomes)]
        positives = [g @ np.conj(g).T for g in blocks]
        total = sum(positives)
        eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (total + np.conj(total).T))
        if eigenvalues[0] <= 1e-12 * eigenvalues[-1]:
            logger.debug("random_povm seed %d: singular effect sum, redraw %d", seed, attempt + 1)
            continue
        inv_sqrt = (eigenvectors / np.sqrt(eigenvalues)) @ np.conj(eigenvectors).T
        effects = []
        for positive in positives:
            effect = inv_sqrt @ positive @ inv_sqrt
            effects.append(0.5 * (effect + np.conj(effect).T))
        return validate_povm(effects, label_prefix=label_prefix, tolerances=tolerances)

    raise SingularityError(f"effect sum singular in {MAX_RETRIES + 1} draws for seed {seed}")


def random_channel(
    dim_in: int,
    dim_out: int,
    n_kraus: int,
    seed: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> KrausChannel:
    """
    Kraus operators sliced from a random isometry V (V^dagger V = I)

    The isometry is the Q factor of a (n_kraus * dim_out) x dim_in Ginibre matrix
    with the phases of R's diagonal absorbed, so one Kraus operator with
    dim_in == dim_out is a Haar-random unitary.
    """
    if n_kraus < 1:
        raise DimensionError(f"need at least one Kraus operator, got {n_kraus}")
    if n_kraus * dim_out < dim_in:
        raise DimensionError(
            f"{n_kraus} Kraus operators of shape {dim_out}x{dim_in} cannot preserve trace"
        )

    rng = np.random.default_rng(seed)
    for attempt in range(MAX_RETRIES + 1):
        q, r = np.linalg.qr(ginibre(rng, n_kraus * dim_out, dim_in))
        diag = np.diagonal(r)
        magnitudes = np.abs(diag)
        if magnitudes.min() <= 1e-12 * magnitudes.max():
            logger.debug("random_channel seed %d: rank-deficient draw, redraw %d", seed, attempt + 1)
            continue
        isometry = q * (diag / magnitudes)
        kraus = [isometry[m * dim_out:(m + 1) * dim_out, :] for m in range(n_kraus)]
        return validate_channel(kraus, dim_in, dim_out, tolerances)

    raise RankError(f"rank-deficient in {MAX_RETRIES + 1} draws for seed {seed}")


def random_scenario(
    seed: int,
    d1: int,
    d2: int,
    n_kraus: int,
    n_outcomes_a: int = 2,
    n_outcomes_b: int = 2,
    with_alt: bool = True,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Scenario:
    """Full-rank random scenario; the parts draw from child seeds of ``seed``"""
    state_seed, channel_seed, a_seed, b_seed, alt_seed = (
        int(s) for s in np.random.SeedSequence(seed).generate_state(5)
    )
    rho = random_state(d1, state_seed, ensure_full_rank=True, tolerances=tolerances)
    channel = random_channel(d1, d2, n_kraus, channel_seed, tolerances)
    povm_a = random_povm(d1, n_outcomes_a, a_seed, "a", tolerances)
    povm_b = random_povm(d2, n_outcomes_b, b_seed, "b", tolerances)
    povm_a_alt = random_povm(d1, n_outcomes_a, alt_seed, "a", tolerances) if with_alt else None
    return build_scenario(
        name=f"random-{seed}",
        rho=rho,
        channel=channel,
        povm_a=povm_a,
        povm_b=povm_b,
        povm_a_alt=povm_a_alt,
        description=f"seed={seed} d1={d1} d2={d2} kraus={n_kraus}",
    )


def corrupt_channel(channel: KrausChannel, delta: float = 1e-3, entry=(0, 0, 0)) -> KrausChannel:
    """Copy of ``channel`` with one Kraus entry shifted by ``delta``, skipping validation"""
    stacked = np.array(channel.stacked)
    stacked[entry] += delta
    kraus = tuple(as_complex_matrix(op, "Kraus operator") for op in stacked)
    return KrausChannel.model_construct(dim_in=channel.dim_in, dim_out=channel.dim_out, kraus=kraus)
