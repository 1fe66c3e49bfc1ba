"""
Greatest-lower-bound criteria and the spectral identities for pairs of projections.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from modules.spectra import (
    DEFAULT_TOLERANCES,
    Projection,
    ToleranceConfig,
    hermitian_eigenvalues,
    nonsym_spectrum,
    operator_norm,
    spectrum,
)
from .order import check_same_dim, complement, leq, meet_nullspace, meet_spectral, product_operator

logger = logging.getLogger(__name__)

# |λ| at or below this counts as zero when comparing nonzero spectra.
NONZERO_THRESHOLD = 1e-6
# Open window (ε, 1−ε) for the complementary-spectrum identity.
WINDOW_EPS = 1e-6


@dataclass(frozen=True)
class GlbReport:
    sup_sigma_excl_one: float
    criterion_holds: bool
    meet: Projection
    norm_gap: float


@dataclass(frozen=True)
class NormCheckReport:
    is_glb: bool
    norm: float
    is_below_all: bool


@dataclass(frozen=True)
class NonzeroMeetReport:
    meet_nonzero: bool
    pq_norm: float
    consistent: bool


@dataclass(frozen=True)
class SpectrumIdentityReport:
    spectra: Dict[str, List[float]]
    product_spectra_discrepancy: float
    complement_lhs: List[float]
    complement_rhs: List[float]
    complement_discrepancy: float
    pq_norm_squared: float
    pqp_norm: float
    pqp_max_eigenvalue: float
    norm_discrepancy: float
    max_discrepancy: float


@dataclass(frozen=True)
class DualityReport:
    pq_window: List[float]
    complements_window: List[float]
    discrepancy: float


def multiset_discrepancy(a: Sequence[float], b: Sequence[float],
                         lo: float, hi: float = math.inf) -> float:
    """
    Largest deviation of an optimal pairing between two multisets of reals.

    Both multisets are restricted to the open window (lo, hi). A value left
    without a partner is charged its distance to the nearer window edge, so a
    value that only just crossed the edge costs almost nothing.
    """
    a = np.sort([x for x in a if lo < x < hi])
    b = np.sort([x for x in b if lo < x < hi])
    if a.size == 0 and b.size == 0:
        return 0.0

    def edge(x):
        return min(x - lo, hi - x)

    size = a.size + b.size
    cost = np.zeros((size, size))
    cost[:a.size, :b.size] = np.abs(a[:, None] - b[None, :])
    cost[:a.size, b.size:] = np.array([edge(x) for x in a])[:, None]
    cost[a.size:, :b.size] = np.array([edge(x) for x in b])[None, :]
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _nonzero_real(values) -> List[float]:
    return sorted(float(np.real(v)) for v in values if abs(v) > NONZERO_THRESHOLD)


def glb_criterion(ps: Sequence[Projection], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> GlbReport:
    """
    sup(σ(T*T) \\ {1}) for T = P_0⋯P_n together with the meet and ‖T − meet‖.

    Eigenvalues within eig_cluster of 1 count as 1.
    """
    T = product_operator(ps)
    rest = [lam for lam in spectrum(T.conj().T @ T, cfg) if abs(lam - 1.0) > cfg.eig_cluster]
    sup = max([0.0] + rest)
    meet = meet_spectral(ps, cfg)
    return GlbReport(
        sup_sigma_excl_one=sup,
        criterion_holds=sup < 1.0 - cfg.eig_cluster,
        meet=meet,
        norm_gap=operator_norm(T - meet.matrix),
    )


def glb_norm_check(ps: Sequence[Projection], R: Projection,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> NormCheckReport:
    """R is the g.l.b. of ps iff R lies below every P_i and ‖T − R‖ < 1."""
    check_same_dim(R, *ps)
    below = all(leq(R, p, cfg) for p in ps)
    norm = operator_norm(product_operator(ps) - R.matrix)
    return NormCheckReport(is_glb=below and norm < 1.0 - cfg.order_tol, norm=norm, is_below_all=below)


def nonzero_meet_check(P: Projection, Q: Projection,
                       cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> NonzeroMeetReport:
    """P ∧ Q ≠ 0 decided by rank, cross-checked against ‖PQ‖ = 1."""
    check_same_dim(P, Q)
    meet_nonzero = not meet_nullspace([P, Q], cfg).is_zero()
    pq_norm = operator_norm(P.matrix @ Q.matrix)
    norm_says_one = abs(pq_norm - 1.0) <= cfg.order_tol
    return NonzeroMeetReport(meet_nonzero=meet_nonzero, pq_norm=pq_norm, consistent=norm_says_one == meet_nonzero)


def spectrum_identity_report(P: Projection, Q: Projection,
                             cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SpectrumIdentityReport:
    check_same_dim(P, Q)
    p, q = P.matrix, Q.matrix
    q_perp = np.eye(P.dim) - q

    products = {
        "PQP": p @ q @ p,
        "PPQ": p @ p @ q,
        "PQ": p @ q,
        "QP": q @ p,
        "QQP": q @ q @ p,
        "QPQ": q @ p @ q,
    }
    spectra = {name: _nonzero_real(nonsym_spectrum(m)) for name, m in products.items()}
    reference = spectra["PQP"]
    product_gap = max(multiset_discrepancy(reference, s, lo=NONZERO_THRESHOLD) for s in spectra.values())

    pqp_eigs = hermitian_eigenvalues(products["PQP"])
    lhs = sorted(float(x) for x in hermitian_eigenvalues(p @ q_perp @ p) if WINDOW_EPS < x < 1 - WINDOW_EPS)
    rhs = sorted(float(1 - x) for x in pqp_eigs if WINDOW_EPS < x < 1 - WINDOW_EPS)
    complement_gap = multiset_discrepancy(lhs, rhs, lo=WINDOW_EPS, hi=1 - WINDOW_EPS)

    pq_norm_sq = operator_norm(p @ q) ** 2
    pqp_norm = operator_norm(products["PQP"])
    pqp_max = float(pqp_eigs.max()) if pqp_eigs.size else 0.0
    norm_gap = max(abs(pq_norm_sq - pqp_max), abs(pq_norm_sq - pqp_norm))

    report = SpectrumIdentityReport(
        spectra=spectra,
        product_spectra_discrepancy=product_gap,
        complement_lhs=lhs,
        complement_rhs=rhs,
        complement_discrepancy=complement_gap,
        pq_norm_squared=pq_norm_sq,
        pqp_norm=pqp_norm,
        pqp_max_eigenvalue=pqp_max,
        norm_discrepancy=norm_gap,
        max_discrepancy=max(product_gap, complement_gap, norm_gap),
    )
    logger.debug(f"spectral identities: max discrepancy {report.max_discrepancy:.3e}")
    return report


def lub_glb_duality_report(P: Projection, Q: Projection) -> DualityReport:
    """σ(PQ) ∩ (0,1) against σ(P⊥Q⊥) ∩ (0,1)."""
    check_same_dim(P, Q)
    p_perp, q_perp = complement(P), complement(Q)

    def window(m):
        return sorted(float(np.real(v)) for v in nonsym_spectrum(m) if WINDOW_EPS < np.real(v) < 1 - WINDOW_EPS)

    a = window(P.matrix @ Q.matrix)
    b = window(p_perp.matrix @ q_perp.matrix)
    return DualityReport(
        pq_window=a,
        complements_window=b,
        discrepancy=multiset_discrepancy(a, b, lo=WINDOW_EPS, hi=1 - WINDOW_EPS),
    )
