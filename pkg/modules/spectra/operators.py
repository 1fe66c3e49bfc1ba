"""
Operator value types: Hermitian operators and orthogonal projections.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from modules.errors import ArgumentError, NumericInputError
from .norms import operator_norm
from .subspaces import as_matrix, canonical_basis, check_finite, range_basis
from .tolerance import DEFAULT_TOLERANCES, ToleranceConfig

# Idempotence / self-adjointness slack accepted by Projection.from_matrix.
PROJECTION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense self-adjoint matrix, symmetrized at construction."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self.entries

    @classmethod
    def from_matrix(cls, m, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> "HermitianOperator":
        arr = as_matrix(m)
        if arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ArgumentError(f"Hermitian operator must be square and non-empty, got {arr.shape}")
        check_finite(arr, "Hermitian operator")
        asymmetry = operator_norm(arr - arr.conj().T)
        if asymmetry > cfg.rank_tol * operator_norm(arr):
            raise NumericInputError(f"matrix is not Hermitian: ‖M − M*‖ = {asymmetry:.3e}")
        return cls((arr + arr.conj().T) / 2)

    @classmethod
    def coerce(cls, value, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> "HermitianOperator":
        if isinstance(value, cls):
            return value
        return cls.from_matrix(value, cfg)


@dataclass(frozen=True, eq=False)
class Projection:
    """
    Orthogonal projection with a canonical orthonormal basis of its range.

    `matrix` is always range_basis @ range_basis^*.
    """

    dim: int
    matrix: np.ndarray
    range_basis: np.ndarray

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.dim, self.dim) or self.range_basis.shape[0] != self.dim:
            raise ArgumentError("projection matrix/basis shapes do not match its dimension")
        self.matrix.setflags(write=False)
        self.range_basis.setflags(write=False)

    @property
    def rank(self) -> int:
        return self.range_basis.shape[1]

    def is_zero(self) -> bool:
        return self.rank == 0

    @classmethod
    def from_orthonormal(cls, basis: np.ndarray, canonical: bool = True) -> "Projection":
        """Projection onto span(basis) for a basis already known to be orthonormal."""
        basis = np.array(basis, dtype=complex)
        dim, rank = basis.shape
        if canonical and rank:
            basis = canonical_basis(basis @ basis.conj().T, rank)
        return cls(dim, basis @ basis.conj().T, basis)

    @classmethod
    def from_basis(cls, vectors, dim: Optional[int] = None,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> "Projection":
        """Projection onto the span of the given column vectors."""
        arr = np.asarray(vectors, dtype=complex)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.size == 0:
            if dim is None:
                raise ArgumentError("dimension required for an empty basis")
            return cls.zero(dim)
        check_finite(arr, "basis")
        return cls.from_orthonormal(range_basis(arr, cfg.rank_tol))

    @classmethod
    def from_matrix(cls, m, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> "Projection":
        arr = as_matrix(m)
        if arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ArgumentError(f"projection must be square and non-empty, got {arr.shape}")
        check_finite(arr, "projection")
        if operator_norm(arr - arr.conj().T) > PROJECTION_TOL:
            raise NumericInputError("projection matrix is not self-adjoint")
        if operator_norm(arr @ arr - arr) > PROJECTION_TOL:
            raise NumericInputError("projection matrix is not idempotent")
        arr = (arr + arr.conj().T) / 2
        rank = int(round(float(np.trace(arr).real)))
        return cls(arr.shape[0], *_rebuilt(arr, rank))

    @classmethod
    def zero(cls, dim: int) -> "Projection":
        return cls(dim, np.zeros((dim, dim), dtype=complex), np.zeros((dim, 0), dtype=complex))

    @classmethod
    def identity(cls, dim: int) -> "Projection":
        eye = np.eye(dim, dtype=complex)
        return cls(dim, eye.copy(), eye)


def _rebuilt(arr: np.ndarray, rank: int):
    basis = canonical_basis(arr, rank)
    return basis @ basis.conj().T, basis
