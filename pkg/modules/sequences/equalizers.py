"""
Decreasing and increasing sequences with the same lower (upper) bounds as a
given finite family of projections.
"""

import logging
from typing import Callable, List, Sequence

import numpy as np

from modules.errors import ConstructionError
from modules.projorder import check_nonempty, complement, meet_spectral
from modules.spectra import (
    DEFAULT_TOLERANCES,
    Projection,
    ToleranceConfig,
    decompose,
    frobenius_distance,
    operator_norm,
    range_basis,
)
from .schedule import ScheduleConfig

logger = logging.getLogger(__name__)

# Upper bound on the index search for m_n; constant inner sequences stop at 0.
MAX_INDEX_SCAN = 64


def _inner_sequence(partial_meet: Projection) -> Callable[[int], Projection]:
    """Decreasing sequence with meet P_0 ∧ … ∧ P_n; constant in finite dimension."""
    return lambda m: partial_meet


def _stabilization_index(inner: Callable[[int], Projection], earlier: Sequence[Projection],
                         q_prev: Projection, n: int) -> int:
    """First m with ‖P⊥_{k,n}P_{n,m}‖ ≤ 2^−n for all k < n and ‖Q⊥_{n−1}P_{n,m}‖ ≤ 2^−n."""
    bound = 2.0 ** (-n)
    for m in range(MAX_INDEX_SCAN):
        candidate = inner(m).matrix
        gaps = [operator_norm(candidate - p.matrix @ candidate) for p in (*earlier, q_prev)]
        if max(gaps) <= bound:
            return m
    raise ConstructionError(f"no stabilization index within {MAX_INDEX_SCAN} steps at n={n}")


def decreasing_equalizer_recursive(ps: Sequence[Projection],
                                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> List[Projection]:
    """
    Q_0 = P_0 and Q_n = E⊥_{Q_{n−1} P_{n,m_n} Q_{n−1}}((1 − 2^{−2n})−).
    """
    check_nonempty(ps)
    partial_meets = [ps[0]]
    qs = [ps[0]]
    for n in range(1, len(ps)):
        partial_meets.append(meet_spectral([partial_meets[-1], ps[n]], cfg))
        inner = _inner_sequence(partial_meets[n])
        m_n = _stabilization_index(inner, partial_meets[:n], qs[-1], n)
        q_prev = qs[-1].matrix
        cut = 1.0 - 2.0 ** (-2 * n)
        qs.append(decompose(q_prev @ inner(m_n).matrix @ q_prev, cfg).upper_family_at(cut, "open_below"))
        logger.debug(f"recursive equalizer: n={n}, m_n={m_n}, rank {qs[-1].rank}")
    return qs


def _family_term(ps: Sequence[Projection], n: int) -> Projection:
    """P_n, continued by the last element past the end of the family."""
    return ps[min(n, len(ps) - 1)]


def range_product_projection(ps: Sequence[Projection], n: int,
                             cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    """Projection onto range(P_0⋯P_n)."""
    dim = check_nonempty(ps)
    product = ps[0].matrix
    for k in range(1, n + 1):
        product = product @ _family_term(ps, k).matrix
    return Projection.from_basis(range_basis(product, cfg.rank_tol), dim=dim, cfg=cfg)


def spectral_sandwich_sequence(ps: Sequence[Projection], sched: ScheduleConfig = ScheduleConfig(),
                               cfg: ToleranceConfig = DEFAULT_TOLERANCES,
                               length: int = None) -> List[Projection]:
    """Raw terms E⊥_{T_n*T_n}(t_{n,1}) with T_n = P_0⋯P_n."""
    check_nonempty(ps)
    length = len(ps) if length is None else length
    terms = []
    T = None
    for n in range(length):
        p = _family_term(ps, n).matrix
        T = p if T is None else T @ p
        cut = sched.cutoff(n, 1, cfg.eig_cluster)
        terms.append(decompose(T.conj().T @ T, cfg).upper_family_at(cut, "closed"))
    return terms


def decreasing_equalizer_spectral(ps: Sequence[Projection], sched: ScheduleConfig = ScheduleConfig(),
                                  cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> List[Projection]:
    """
    Decreasing sequence with range(Q'_n) = range(Q_0⋯Q_n) over the sandwich terms Q_n.

    The family is continued by its last element until the final term is the
    spectral meet or the cutoff has reached spectral resolution.
    """
    dim = check_nonempty(ps)
    target = meet_spectral(ps, cfg)
    out: List[Projection] = []
    T = None
    product = None
    n = 0
    while True:
        p = _family_term(ps, n).matrix
        T = p if T is None else T @ p
        raw = decompose(T.conj().T @ T, cfg).upper_family_at(sched.cutoff(n, 1, cfg.eig_cluster), "closed")
        product = raw.matrix if product is None else product @ raw.matrix
        out.append(Projection.from_basis(range_basis(product, cfg.rank_tol), dim=dim, cfg=cfg))
        reached = frobenius_distance(out[-1], target) <= cfg.order_tol
        clamped = sched.is_clamped(n, 1, cfg.eig_cluster)
        n += 1
        if n >= len(ps) and (reached or clamped):
            break
    if len(out) > len(ps):
        logger.debug(f"spectral equalizer padded {len(ps)} terms to {len(out)}")
    return out


def increasing_equalizer(ps: Sequence[Projection],
                         cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> List[Projection]:
    """Complements of the recursive decreasing equalizer of the complements."""
    check_nonempty(ps)
    qs = [complement(q) for q in decreasing_equalizer_recursive([complement(p) for p in ps], cfg)]
    for n, q in enumerate(qs):
        spanned = np.hstack([p.range_basis for p in ps[:n + 1]])
        base_rank = range_basis(spanned, cfg.rank_tol).shape[1]
        if range_basis(np.hstack([spanned, q.range_basis]), cfg.rank_tol).shape[1] != base_rank:
            raise ConstructionError(f"term {n} leaves the span of the first {n + 1} projections")
    return qs
