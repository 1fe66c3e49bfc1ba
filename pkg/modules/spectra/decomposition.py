"""
Hermitian eigendecomposition with clustered eigenvalues, and the spectral
family E_S(t) built from it.

Boundary policy: an eigenvalue within eig_cluster of the cutoff t belongs
to E_S(t) and not to E_S(t−). Upper families are the exact complements,
assembled from the complementary eigenprojections.
"""

import logging
from dataclasses import dataclass
from typing import List, Literal, Sequence, Tuple

import numpy as np
import scipy.linalg as la

from modules.errors import ArgumentError, NumericInputError
from .operators import HermitianOperator, Projection
from .subspaces import as_matrix, canonical_basis, check_finite
from .tolerance import DEFAULT_TOLERANCES, ToleranceConfig

logger = logging.getLogger(__name__)

Side = Literal["closed", "open_below"]
SIDES = ("closed", "open_below")


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending clustered eigenvalues with their (orthogonal) eigenprojections."""

    dim: int
    eigenvalues: Tuple[float, ...]
    projectors: Tuple[Projection, ...]
    tolerances: ToleranceConfig

    def family_at(self, t: float, side: Side = "closed") -> Projection:
        """E_S(t) for side='closed', E_S(t−) for side='open_below'."""
        eps = self.tolerances.eig_cluster
        if side == "closed":
            return self._sum(lambda lam: lam <= t + eps)
        if side == "open_below":
            return self._sum(lambda lam: lam < t - eps)
        raise ArgumentError(f"unknown side {side!r}; expected one of {SIDES}")

    def upper_family_at(self, t: float, side: Side = "closed") -> Projection:
        """E⊥_S(t) for side='closed', E⊥_S(t−) for side='open_below'."""
        eps = self.tolerances.eig_cluster
        if side == "closed":
            return self._sum(lambda lam: lam > t + eps)
        if side == "open_below":
            return self._sum(lambda lam: lam >= t - eps)
        raise ArgumentError(f"unknown side {side!r}; expected one of {SIDES}")

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for lam, proj in zip(self.eigenvalues, self.projectors):
            out += lam * proj.matrix
        return out

    def _sum(self, keep) -> Projection:
        blocks = [p.range_basis for lam, p in zip(self.eigenvalues, self.projectors) if keep(lam)]
        if not blocks:
            return Projection.zero(self.dim)
        return Projection.from_orthonormal(np.hstack(blocks), canonical=False)


def _cluster(values: np.ndarray, radius: float) -> List[np.ndarray]:
    """Single-linkage clusters of sorted values, as index arrays."""
    if values.size == 0:
        return []
    cuts = np.nonzero(np.diff(values) > radius)[0] + 1
    return np.split(np.arange(values.size), cuts)


def decompose(S, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    if isinstance(S, SpectralDecomposition):
        return S
    op = HermitianOperator.coerce(S, cfg)
    try:
        w, v = la.eigh(op.entries)
    except (la.LinAlgError, ValueError) as e:
        raise NumericInputError(f"eigendecomposition failed: {e}") from e

    eigenvalues, projectors = [], []
    for group in _cluster(w, cfg.eig_cluster):
        vecs = v[:, group]
        basis = canonical_basis(vecs @ vecs.conj().T, len(group))
        eigenvalues.append(float(np.mean(w[group])))
        projectors.append(Projection.from_orthonormal(basis, canonical=False))
    logger.debug(f"decomposed dim={op.dim} into {len(eigenvalues)} clusters")
    return SpectralDecomposition(op.dim, tuple(eigenvalues), tuple(projectors), cfg)


def spectral_family_at(S, t: float, side: Side = "closed",
                       cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    return decompose(S, cfg).family_at(t, side)


def upper_family_at(S, t: float, side: Side = "closed",
                    cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    return decompose(S, cfg).upper_family_at(t, side)


def spectrum(S, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> List[float]:
    """Clustered eigenvalues of a Hermitian operator, ascending."""
    return list(decompose(S, cfg).eigenvalues)


def nonsym_spectrum(T) -> List[complex]:
    """Eigenvalues of a general square matrix, sorted by real then imaginary part."""
    arr = as_matrix(T)
    if arr.shape[0] != arr.shape[1]:
        raise ArgumentError(f"matrix must be square, got {arr.shape}")
    check_finite(arr)
    if arr.size == 0:
        return []
    try:
        values = la.eigvals(arr)
    except la.LinAlgError as e:
        raise NumericInputError(f"eigenvalue computation failed: {e}") from e
    return [complex(x) for x in np.sort_complex(values)]


def spectral_window_projection(S, s: float, t: float,
                               cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    """
    A projection P with E⊥_S(s) ≤ P ≤ E⊥_S(t), for 0 < t < s.

    Finite-dimensional algebras contain every spectral projection, so the
    upper end E⊥_S(t) is returned.
    """
    if not (0 < t < s):
        raise ArgumentError(f"spectral window needs 0 < t < s, got t={t}, s={s}")
    return decompose(S, cfg).upper_family_at(t, "closed")


def hermitian_eigenvalues(S: Sequence) -> np.ndarray:
    """Raw (unclustered) ascending eigenvalues, for multiset comparisons."""
    arr = as_matrix(S)
    check_finite(arr)
    return la.eigvalsh((arr + arr.conj().T) / 2)
