#!/usr/bin/env python3
"""
Dense complex matrix algebra on numpy ``complex128`` arrays.

Conventions used everywhere in the package:

* transposes and partial transposes are taken in the fixed computational basis;
* in a bipartite operator on S1 (x) S2, system S1 is the slow (left) index,
  so basis state |i>|j> has flat index ``i * d2 + j``.
"""

import logging
from typing import Literal, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import DimensionError, HermiticityError, NegativityError, NonFiniteError
from ..models import BipartiteDims, MatrixComparison

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
Subsystem = Literal[1, 2]


def as_complex_matrix(data: npt.ArrayLike, name: str = "matrix") -> ComplexMatrix:
    """Coerce ``data`` to a read-only 2-D complex128 array with finite entries"""
    mat = np.array(data, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise NonFiniteError(f"{name} has NaN or infinite entries")
    mat.setflags(write=False)
    return mat


def _frozen(mat: np.ndarray) -> ComplexMatrix:
    out = np.ascontiguousarray(mat, dtype=np.complex128)
    out.setflags(write=False)
    return out


def identity(dim: int) -> ComplexMatrix:
    return _frozen(np.eye(dim, dtype=np.complex128))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; row (i, j) of the result is flat index i * b.rows + j"""
    return _frozen(np.kron(a, b))


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return _frozen(np.conj(m).T)


def transpose(m: ComplexMatrix) -> ComplexMatrix:
    return _frozen(np.transpose(m))


def conj(m: ComplexMatrix) -> ComplexMatrix:
    return _frozen(np.conj(m))


def trace(m: ComplexMatrix) -> complex:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"trace needs a square matrix, got shape {m.shape}")
    return complex(np.trace(m))


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return _frozen(a @ b)


def add(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.shape != b.shape:
        raise DimensionError(f"cannot add shapes {a.shape} and {b.shape}")
    return _frozen(a + b)


def scale(m: ComplexMatrix, factor: complex) -> ComplexMatrix:
    return _frozen(factor * m)


def _check_bipartite(m: ComplexMatrix, dims: BipartiteDims, which: int) -> None:
    if which not in (1, 2):
        raise DimensionError(f"subsystem selector must be 1 or 2, got {which}")
    n = dims.total
    if m.shape != (n, n):
        raise DimensionError(f"operator of shape {m.shape} does not match dims ({dims.d1}, {dims.d2})")


def partial_trace(m: ComplexMatrix, dims: BipartiteDims, which: Subsystem) -> ComplexMatrix:
    """Trace out subsystem ``which``; returns a d2 x d2 (which=1) or d1 x d1 (which=2) matrix"""
    _check_bipartite(m, dims, which)
    tensor = np.reshape(m, (dims.d1, dims.d2, dims.d1, dims.d2))
    if which == 1:
        return _frozen(np.einsum("ijik->jk", tensor))
    return _frozen(np.einsum("ijkj->ik", tensor))


def partial_transpose(m: ComplexMatrix, dims: BipartiteDims, which: Subsystem) -> ComplexMatrix:
    """Transpose the indices of subsystem ``which`` only"""
    _check_bipartite(m, dims, which)
    tensor = np.reshape(m, (dims.d1, dims.d2, dims.d1, dims.d2))
    axes = (2, 1, 0, 3) if which == 1 else (0, 3, 2, 1)
    return _frozen(np.reshape(np.transpose(tensor, axes), (dims.total, dims.total)))


def hermitian_deviation(m: ComplexMatrix) -> float:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return float(np.max(np.abs(m - np.conj(m).T)))


def hermitian_eigh(
    m: ComplexMatrix,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[np.ndarray, ComplexMatrix]:
    """Eigendecomposition of a Hermitian matrix (ascending eigenvalues).

    Raises HermiticityError when ``m`` is not Hermitian within tolerance.
    """
    deviation = hermitian_deviation(m)
    if deviation > tolerances.hermiticity * max(1.0, float(np.max(np.abs(m)))):
        raise HermiticityError(f"matrix is not Hermitian (max |M - M^dagger| = {deviation:.3e})")
    symmetric = 0.5 * (m + np.conj(m).T)
    eigenvalues, eigenvectors = np.linalg.eigh(symmetric)
    return eigenvalues, eigenvectors


def psd_sqrt(m: ComplexMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ComplexMatrix:
    """Hermitian PSD square root; eigenvalues within the PSD slack are clamped to 0"""
    eigenvalues, eigenvectors = hermitian_eigh(m, tolerances)
    slack = tolerances.psd_slack(float(np.max(np.abs(eigenvalues))))
    if eigenvalues[0] < -slack:
        raise NegativityError(f"matrix has eigenvalue {eigenvalues[0]:.3e} below -{slack:.1e}")
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return _frozen((eigenvectors * roots) @ np.conj(eigenvectors).T)


def approx_eq(a: ComplexMatrix, b: ComplexMatrix, tol: float) -> MatrixComparison:
    """Entrywise comparison reporting the largest deviation and where it occurs"""
    if a.shape != b.shape:
        raise DimensionError(f"cannot compare shapes {a.shape} and {b.shape}")
    diff = np.abs(np.asarray(a) - np.asarray(b))
    flat = int(np.argmax(diff))
    index = tuple(int(i) for i in np.unravel_index(flat, diff.shape))
    deviation = float(diff.flat[flat])
    return MatrixComparison(equal=deviation <= tol, max_deviation=deviation, index=index, tolerance=tol)


def max_deviation(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """Largest entrywise absolute difference of two equally shaped arrays"""
    left, right = np.asarray(a), np.asarray(b)
    if left.shape != right.shape:
        raise DimensionError(f"cannot compare shapes {left.shape} and {right.shape}")
    if left.size == 0:
        return 0.0
    return float(np.max(np.abs(left - right)))


def maximally_entangled_vector(dim: int, normalized: bool = True) -> np.ndarray:
    """sum_j |j>|j>, optionally divided by sqrt(dim)"""
    vec = np.reshape(np.eye(dim, dtype=np.complex128), dim * dim)
    if normalized:
        vec = vec / np.sqrt(dim)
    return vec


def projector(vec: Sequence[complex]) -> ComplexMatrix:
    """|v><v|"""
    column = np.asarray(vec, dtype=np.complex128)
    return _frozen(np.outer(column, np.conj(column)))
