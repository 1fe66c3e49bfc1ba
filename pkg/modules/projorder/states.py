"""
Density-matrix states and the centredness of {P : φ(P) = 1}.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg as la

from modules.errors import ArgumentError, NumericInputError
from modules.spectra import DEFAULT_TOLERANCES, Projection, ToleranceConfig, as_matrix, operator_norm
from modules.spectra.subspaces import check_finite
from .order import check_nonempty, product_operator

TRACE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DensityState:
    dim: int
    rho: np.ndarray

    def __post_init__(self) -> None:
        self.rho.setflags(write=False)

    @classmethod
    def from_matrix(cls, m, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> "DensityState":
        rho = as_matrix(m)
        if rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
            raise ArgumentError(f"density matrix must be square and non-empty, got {rho.shape}")
        check_finite(rho, "density matrix")
        if operator_norm(rho - rho.conj().T) > TRACE_TOL:
            raise NumericInputError("density matrix is not self-adjoint")
        rho = (rho + rho.conj().T) / 2
        if la.eigvalsh(rho).min() < -cfg.psd_tol:
            raise NumericInputError("density matrix is not positive semidefinite")
        if abs(np.trace(rho).real - 1.0) > TRACE_TOL:
            raise NumericInputError(f"density matrix has trace {np.trace(rho).real}, expected 1")
        return cls(rho.shape[0], rho)

    @classmethod
    def pure(cls, v) -> "DensityState":
        v = np.asarray(v, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0 or not np.isfinite(norm):
            raise NumericInputError("pure state needs a finite nonzero vector")
        v = v / norm
        return cls(v.size, np.outer(v, v.conj()))

    def expectation(self, P: Projection) -> float:
        if P.dim != self.dim:
            raise ArgumentError(f"state has dimension {self.dim}, projection {P.dim}")
        return float(np.trace(self.rho @ P.matrix).real)


@dataclass(frozen=True)
class CentredReport:
    all_one: bool
    product_norm: float

    @property
    def consistent(self) -> bool:
        return not self.all_one or self.product_norm >= 1 - 1e-8


def state_centred_check(rho: DensityState, ps: Sequence[Projection]) -> CentredReport:
    """Projections with φ(P) = 1 have a product of norm 1."""
    check_nonempty(ps)
    all_one = all(rho.expectation(p) >= 1 - TRACE_TOL for p in ps)
    return CentredReport(all_one=all_one, product_norm=operator_norm(product_operator(ps)))
