"""
Essential norms, essential spectra and the essential order, estimated on
tail windows of block-diagonal sequences.

Everything here is a surrogate for a quotient quantity: the reports carry a
convergence flag and an extrapolated limit rather than a claim of exactness.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np
import scipy.linalg as la

from modules.errors import ArgumentError
from modules.spectra import range_basis
from .operators import BlockSequenceOperator, check_truncation

logger = logging.getLogger(__name__)

TOL_ESS = 1e-6
ESS_CLUSTER = 1e-3
CONVERGENCE_SLACK = 1e-6
AITKEN_MIN_DENOMINATOR = 1e-15
SYNTHESIS_RANK_TOL = 1e-10


@dataclass(frozen=True)
class EssentialReport:
    estimate: float
    window_max_sequence: List[float]
    converged: bool
    extrapolated_limit: float


@dataclass(frozen=True)
class ClosedSumReport:
    window_lower_bounds: List[float]
    lower_bound_limit: float
    consistent_with_closed: bool
    join_matches: bool
    heuristic: bool = True


def windows(N: int) -> List[Tuple[int, int]]:
    """[N/8, N/4), [N/4, N/2), [N/2, N)."""
    return [(N // 8, N // 4), (N // 4, N // 2), (N // 2, N)]


def _window_values(T: BlockSequenceOperator, value: Callable[[np.ndarray], float],
                   reduce: Callable[[Sequence[float]], float]) -> List[float]:
    check_truncation(T)
    out = []
    for start, stop in windows(T.N):
        out.append(float(reduce([value(b) for b in T.blocks(start, stop)])))
    return out


def extrapolate(seq: Sequence[float]) -> float:
    """
    Aitken Δ² limit of three strictly decreasing window values, clamped to
    [0, last]; the last value otherwise.
    """
    a1, a2, a3 = seq[-3:]
    if not (a1 > a2 > a3):
        return a3
    denominator = a3 - 2 * a2 + a1
    if abs(denominator) < AITKEN_MIN_DENOMINATOR:
        return a3
    limit = a3 - (a3 - a2) ** 2 / denominator
    return float(min(max(limit, 0.0), a3))


def _block_norm(b: np.ndarray) -> float:
    return float(la.norm(b, 2)) if b.size else 0.0


def essential_norm_estimate(T: BlockSequenceOperator) -> EssentialReport:
    maxima = _window_values(T, _block_norm, max)
    converged = all(b <= a + CONVERGENCE_SLACK for a, b in zip(maxima, maxima[1:]))
    report = EssentialReport(
        estimate=maxima[-1],
        window_max_sequence=maxima,
        converged=converged,
        extrapolated_limit=extrapolate(maxima),
    )
    logger.debug(f"essential norm of {T.name or 'operator'}: {report.estimate:.3e} "
                 f"(limit {report.extrapolated_limit:.3e})")
    return report


def essential_leq(p: BlockSequenceOperator, q: BlockSequenceOperator, tol_ess: float = TOL_ESS) -> bool:
    """π(p) ≤ π(q): the essential norm of q⊥p extrapolates to at most tol_ess."""
    return essential_norm_estimate(q.complement() @ p).extrapolated_limit <= tol_ess


def _cluster_representatives(values: np.ndarray, radius: float) -> List[float]:
    if values.size == 0:
        return []
    values = np.sort(values)
    cuts = np.nonzero(np.diff(values) > radius)[0] + 1
    return [float(np.median(group)) for group in np.split(values, cuts)]


def essential_spectrum_estimate(S: BlockSequenceOperator, radius: float = ESS_CLUSTER) -> List[float]:
    """
    Values of the tail-window block spectra that persist in both halves of the
    window, clustered with the given radius.
    """
    check_truncation(S)
    start, stop = S.tail_window
    middle = (start + stop) // 2

    def eigs(lo, hi):
        vals = [la.eigvalsh((b + b.conj().T) / 2) for b in S.blocks(lo, hi)]
        return np.concatenate(vals) if vals else np.zeros(0)

    first, second = eigs(start, middle), eigs(middle, stop)
    if first.size == 0 or second.size == 0:
        return []
    gaps = np.abs(first[:, None] - second[None, :])
    persistent = np.concatenate([first[gaps.min(axis=1) <= radius], second[gaps.min(axis=0) <= radius]])
    return _cluster_representatives(persistent, radius)


def tail_sup_excluding_one(T: BlockSequenceOperator, eig_cluster: float = 1e-9) -> float:
    """sup over the tail window of σ(T_b*T_b) with values within eig_cluster of 1 removed."""
    check_truncation(T)
    start, stop = T.tail_window
    gram = T.adjoint() @ T
    sup = 0.0
    for b in gram.blocks(start, stop):
        vals = la.eigvalsh(b)
        vals = vals[np.abs(vals - 1.0) > eig_cluster]
        if vals.size:
            sup = max(sup, float(vals.max()))
    return sup


def _synthesis_lower_bound(blocks: Sequence[np.ndarray]) -> float:
    """Smallest positive singular value of [range(P_1) | range(P_2) | ...]."""
    stacked = np.hstack([range_basis(b, 0.5) for b in blocks])
    if stacked.shape[1] == 0:
        return 1.0
    s = la.svd(stacked, compute_uv=False)
    s = s[s > SYNTHESIS_RANK_TOL]
    return float(s.min()) if s.size else 1.0


def _join_operator(pns: Sequence[BlockSequenceOperator]) -> BlockSequenceOperator:
    def gen(n):
        stacked = np.hstack([range_basis(p.block(n), 0.5) for p in pns])
        basis = range_basis(stacked, SYNTHESIS_RANK_TOL)
        return basis @ basis.conj().T
    return BlockSequenceOperator(gen, pns[0].N, "⋁")


def closed_sum_diagnostic(pns: Sequence[BlockSequenceOperator], P: BlockSequenceOperator,
                          tol_ess: float = TOL_ESS) -> ClosedSumReport:
    """
    Heuristic check that Σ range(P_k) behaves like a closed subspace.

    The blockwise lower bound of the synthesis map is tracked over the windows;
    a bound extrapolating to zero means the sum is not closed in the limit.
    The blockwise join is compared with P in the essential order.
    """
    if not pns:
        raise ArgumentError("at least one projection family is required")
    if any(p.N != P.N for p in pns):
        raise ArgumentError("all families must share the truncation N")
    check_truncation(P)

    bounds = []
    for start, stop in windows(P.N):
        bounds.append(min(_synthesis_lower_bound([p.block(n) for p in pns]) for n in range(start, stop)))
    limit = extrapolate(bounds)
    J = _join_operator(pns)
    return ClosedSumReport(
        window_lower_bounds=bounds,
        lower_bound_limit=limit,
        consistent_with_closed=limit > tol_ess,
        join_matches=essential_leq(J, P, tol_ess) and essential_leq(P, J, tol_ess),
    )
