"""
Subspace helpers: null spaces, ranges and canonical orthonormal bases.

All bases are returned as column matrices. Thresholds are absolute and come
from the caller's ToleranceConfig.
"""

import numpy as np
import scipy.linalg as la

from modules.errors import NumericInputError

# A projected coordinate vector shorter than this is skipped when building a
# canonical basis; the remaining columns still span the range.
CANONICAL_ACCEPT = 1e-6


def as_matrix(value) -> np.ndarray:
    """Dense complex 2-D array for a matrix, HermitianOperator or Projection."""
    if hasattr(value, "matrix"):
        value = value.matrix
    arr = np.asarray(value, dtype=complex)
    if arr.ndim != 2:
        raise NumericInputError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


def check_finite(arr: np.ndarray, what: str = "matrix") -> None:
    if not np.all(np.isfinite(arr)):
        raise NumericInputError(f"{what} has non-finite entries")


def null_basis(A, atol: float) -> np.ndarray:
    """
    Orthonormal basis of the null space of A.

    Singular values at or below atol are treated as zero.
    """
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = la.svd(A, full_matrices=True)
    nnz = int((s > atol).sum())
    return vh[nnz:].conj().T


def range_basis(A, atol: float) -> np.ndarray:
    """Orthonormal basis of the column space of A (SVD, absolute threshold)."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    if A.shape[1] == 0 or A.shape[0] == 0:
        return np.zeros((A.shape[0], 0), dtype=complex)
    u, s, _ = la.svd(A, full_matrices=False)
    nnz = int((s > atol).sum())
    return u[:, :nnz]


def canonical_basis(projector: np.ndarray, rank: int) -> np.ndarray:
    """
    Deterministic orthonormal basis of range(projector).

    Coordinate vectors are projected in index order and orthonormalized
    (two Gram-Schmidt passes) until `rank` vectors are collected. The
    result depends only on the projector, not on how it was obtained.
    """
    n = projector.shape[0]
    if rank <= 0:
        return np.zeros((n, 0), dtype=complex)
    basis = np.zeros((n, 0), dtype=complex)
    for j in range(n):
        if basis.shape[1] == rank:
            break
        v = projector[:, j].astype(complex, copy=True)
        for _ in range(2):
            v -= basis @ (basis.conj().T @ v)
        norm = np.linalg.norm(v)
        if norm > CANONICAL_ACCEPT:
            basis = np.column_stack([basis, v / norm])
    if basis.shape[1] < rank:
        # the range is spread too thinly over coordinates; SVD basis is still deterministic
        basis = range_basis(projector, 0.5)[:, :rank]
    return basis
