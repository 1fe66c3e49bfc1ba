"""
Separativity witness: for P ≰ Q, a nonzero R ≤ P with R ∧ Q = 0.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from modules.errors import OrderError
from modules.spectra import DEFAULT_TOLERANCES, Projection, ToleranceConfig, decompose, operator_norm
from .order import check_same_dim, leq, meet_nullspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WitnessReport:
    nonzero: bool
    below_p: bool
    qr_norm: float
    qr_bound: float
    meet_with_q_zero: bool

    @property
    def holds(self) -> bool:
        return self.nonzero and self.below_p and self.meet_with_q_zero and self.qr_norm <= self.qr_bound + 1e-8


def separativity_level(P: Projection, Q: Projection) -> float:
    """s = ‖Q⊥P‖²/2."""
    q_perp = np.eye(P.dim) - Q.matrix
    return operator_norm(q_perp @ P.matrix) ** 2 / 2


def separativity_witness(P: Projection, Q: Projection,
                         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    """R = E⊥_{PQ⊥P}(s) with s = ‖Q⊥P‖²/2."""
    check_same_dim(P, Q)
    if leq(P, Q, cfg):
        raise OrderError("P ≤ Q: no separativity witness exists")
    s = separativity_level(P, Q)
    p = P.matrix
    q_perp_p = (np.eye(P.dim) - Q.matrix) @ p
    if s <= cfg.eig_cluster:
        # σ(PQ⊥P) sits inside the clustering band: read E⊥(s) off the singular values of Q⊥P
        _, sv, vh = la.svd(q_perp_p)
        R = Projection.from_orthonormal(vh[sv ** 2 > s].conj().T)
    else:
        R = decompose(q_perp_p.conj().T @ q_perp_p, cfg).upper_family_at(s, "closed")
    logger.debug(f"separativity witness at s={s:.6f} has rank {R.rank}")
    return R


def witness_report(P: Projection, Q: Projection, R: Projection,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> WitnessReport:
    s = separativity_level(P, Q)
    return WitnessReport(
        nonzero=not R.is_zero(),
        below_p=leq(R, P, cfg),
        qr_norm=operator_norm(Q.matrix @ R.matrix),
        qr_bound=math.sqrt(max(0.0, 1 - s)),
        meet_with_q_zero=meet_nullspace([R, Q], cfg).is_zero(),
    )
