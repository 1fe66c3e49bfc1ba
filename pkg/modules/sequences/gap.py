"""
Self-adjoint gap element for a non-commuting pair of projections.

S = f(PQP) lies below both P and Q, is incomparable with 0, and is not
below P ∧ Q, so ({0, S}, {P, Q}) cannot be interpolated.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from modules.errors import ConstructionError
from modules.projorder import check_same_dim, complement, meet_nullspace
from modules.spectra import (
    DEFAULT_TOLERANCES,
    HermitianOperator,
    PiecewiseLinearFunction,
    Projection,
    ToleranceConfig,
    apply_function,
    decompose,
    operator_norm,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GapCertificate:
    S: HermitianOperator
    r: float
    witness_pos: np.ndarray
    witness_neg: np.ndarray
    min_eig_q_minus_s: float
    min_eig_p_minus_s: float
    pos_value: float
    neg_value: float
    meet_overlap: float

    def holds(self, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
        return (
            self.min_eig_q_minus_s >= -cfg.psd_tol
            and self.min_eig_p_minus_s >= -cfg.psd_tol
            and self.pos_value > 0
            and self.neg_value < 0
            and self.meet_overlap <= cfg.order_tol
        )


def gap_function(r: float) -> PiecewiseLinearFunction:
    """−1 up to r/2, linear to r/4 at 3r/4, then constant."""
    return PiecewiseLinearFunction.from_points([r / 2, 3 * r / 4], [-1.0, r / 4])


def _quadratic_form(S: np.ndarray, v: np.ndarray) -> float:
    return float(np.real(np.vdot(v, S @ v)))


def gap_element(P: Projection, Q: Projection, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> GapCertificate:
    check_same_dim(P, Q)
    p, q = P.matrix, Q.matrix
    commutator = operator_norm(p @ q - q @ p)
    if commutator <= cfg.order_tol:
        raise ConstructionError(f"P and Q commute (‖PQ − QP‖ = {commutator:.3e}); no gap element exists")

    dec = decompose(p @ q @ p, cfg)
    eps = cfg.eig_cluster
    inner = [(lam, proj) for lam, proj in zip(dec.eigenvalues, dec.projectors) if eps < lam < 1 - eps]
    if not inner:
        raise ConstructionError("σ(PQP) has no point inside (0, 1)")
    r, eigenspace = min(inner, key=lambda item: (abs(item[0] - 0.5), item[0]))
    logger.debug(f"gap element: r = {r:.6f} chosen from {len(inner)} interior eigenvalues")

    S = apply_function(dec, gap_function(r), cfg)
    witness_pos = eigenspace.range_basis[:, 0].copy()
    witness_neg = complement(P).range_basis[:, 0].copy()
    meet = meet_nullspace([P, Q], cfg)

    cert = GapCertificate(
        S=S,
        r=r,
        witness_pos=witness_pos,
        witness_neg=witness_neg,
        min_eig_q_minus_s=float(la.eigvalsh(q - S.matrix).min()),
        min_eig_p_minus_s=float(la.eigvalsh(p - S.matrix).min()),
        pos_value=_quadratic_form(S.matrix, witness_pos),
        neg_value=_quadratic_form(S.matrix, witness_neg),
        meet_overlap=float(np.linalg.norm(meet.matrix @ witness_pos)),
    )
    if not cert.holds(cfg):
        logger.warning("❌ gap element certificate failed verification")
    return cert
