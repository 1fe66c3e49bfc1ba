"""
Order relation, complements, meets and joins of projections.
"""

import logging
from functools import reduce
from typing import Sequence

import numpy as np

from modules.errors import ArgumentError
from modules.spectra import (
    DEFAULT_TOLERANCES,
    Projection,
    ToleranceConfig,
    decompose,
    null_basis,
    operator_norm,
)

logger = logging.getLogger(__name__)


def check_same_dim(*ps: Projection) -> int:
    dims = {p.dim for p in ps}
    if len(dims) != 1:
        raise ArgumentError(f"projections have mismatched dimensions: {sorted(dims)}")
    return dims.pop()


def check_nonempty(ps: Sequence[Projection]) -> int:
    if not ps:
        raise ArgumentError("at least one projection is required")
    return check_same_dim(*ps)


def leq(P: Projection, Q: Projection, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """P ≤ Q, i.e. ‖P − QP‖ ≤ order_tol."""
    check_same_dim(P, Q)
    return operator_norm(P.matrix - Q.matrix @ P.matrix) <= cfg.order_tol


def strictly_below(P: Projection, Q: Projection, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    return leq(P, Q, cfg) and P.rank < Q.rank


def complement(P: Projection) -> Projection:
    """I − P, with a basis of the orthogonal complement of range(P)."""
    basis = null_basis(P.range_basis.conj().T, 0.5)
    return Projection.from_orthonormal(basis)


def product_operator(ps: Sequence[Projection]) -> np.ndarray:
    """T = P_0 P_1 ⋯ P_n."""
    check_nonempty(ps)
    return reduce(lambda acc, p: acc @ p.matrix, ps[1:], ps[0].matrix.copy())


def meet_nullspace(ps: Sequence[Projection], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    """
    ⋀ P_i as the null space of the stacked complements I − P_i.

    Brute-force reference for the spectral constructions.
    """
    dim = check_nonempty(ps)
    eye = np.eye(dim, dtype=complex)
    stacked = np.vstack([eye - p.matrix for p in ps])
    return Projection.from_orthonormal(null_basis(stacked, cfg.rank_tol))


def meet_spectral(ps: Sequence[Projection], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    """⋀ P_i = E⊥_{T*T}(1−) with T = P_0⋯P_n."""
    T = product_operator(ps)
    meet = decompose(T.conj().T @ T, cfg).upper_family_at(1.0, "open_below")
    logger.debug(f"spectral meet of {len(ps)} projections has rank {meet.rank}")
    return meet


def join(ps: Sequence[Projection], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    """⋁ P_i = (⋀ P_i⊥)⊥."""
    check_nonempty(ps)
    return complement(meet_spectral([complement(p) for p in ps], cfg))


def join_span(ps: Sequence[Projection], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Projection:
    """Projection onto the span of the concatenated range bases."""
    dim = check_nonempty(ps)
    return Projection.from_basis(np.hstack([p.range_basis for p in ps]), dim=dim, cfg=cfg)
