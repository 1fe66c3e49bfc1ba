"""
Norm estimates behind the spectral equalizer: the spectral-family inequality,
the near-decreasing condition on partial products, and the chain bounds.
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from modules.errors import ArgumentError
from modules.projorder import check_nonempty, check_same_dim
from modules.spectra import DEFAULT_TOLERANCES, HermitianOperator, Projection, ToleranceConfig, decompose, operator_norm

CHAIN_SLACK = 1e-8
EE_SLACK = 1e-9


@dataclass(frozen=True)
class EEReport:
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class TechconReport:
    partial_sums: List[float]
    decreasing_tail: bool

    @property
    def bound_excess(self) -> float:
        """Largest excess of the n-th partial sum over 1/(n+1)."""
        return max((s - 1.0 / (n + 1) for n, s in enumerate(self.partial_sums)), default=0.0)


@dataclass(frozen=True)
class ChainBoundReport:
    projection_excess: float
    chain_excess: float

    @property
    def holds(self) -> bool:
        return self.projection_excess <= CHAIN_SLACK and self.chain_excess <= CHAIN_SLACK


def ee_inequality_check(S, P: Projection, s: float, t: float,
                        cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> EEReport:
    """‖E_S(t) E⊥_{PSP}(s)‖² against (‖S‖ − s)/(‖S‖ − t)."""
    op = HermitianOperator.coerce(S, cfg)
    if op.dim != P.dim:
        raise ArgumentError(f"operator has dimension {op.dim}, projection {P.dim}")
    norm = operator_norm(op)
    if not (0 <= s < norm and t < norm):
        raise ArgumentError(f"need 0 ≤ s < ‖S‖ and t < ‖S‖, got s={s}, t={t}, ‖S‖={norm}")
    p = P.matrix
    lower = decompose(op, cfg).family_at(t, "closed")
    upper = decompose(p @ op.matrix @ p, cfg).upper_family_at(s, "closed")
    lhs = operator_norm(lower.matrix @ upper.matrix) ** 2
    rhs = (norm - s) / (norm - t)
    return EEReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs + EE_SLACK)


def _tail_product(ps: Sequence[Projection], start: int, stop: int) -> np.ndarray:
    """P_start ⋯ P_stop."""
    out = ps[start].matrix
    for k in range(start + 1, stop + 1):
        out = out @ ps[k].matrix
    return out


def techcon_check(ps: Sequence[Projection]) -> TechconReport:
    """Partial sums Σ_{k<n} ‖P⊥_k P_{k+1}⋯P_n‖ for every n in the family."""
    dim = check_nonempty(ps)
    eye = np.eye(dim)
    sums = []
    for n in range(len(ps)):
        sums.append(sum(operator_norm((eye - ps[k].matrix) @ _tail_product(ps, k + 1, n)) for k in range(n)))
    tail = sums[len(sums) // 2:]
    decreasing = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
    return TechconReport(partial_sums=sums, decreasing_tail=decreasing)


def chain_bound_report(ps: Sequence[Projection], qs: Sequence[Projection]) -> ChainBoundReport:
    """
    Largest excess over 1/(n+1)² of ‖P⊥_m Q_n‖ and ‖Q⊥_m Q_{m+1}⋯Q_n‖, m < n.

    The family ps is continued by its last element when qs is longer.
    """
    dim = check_same_dim(*ps, *qs)
    eye = np.eye(dim)
    proj_excess = chain_excess = -np.inf
    for n in range(1, len(qs)):
        bound = 1.0 / (n + 1) ** 2
        for m in range(n):
            p_perp = eye - ps[min(m, len(ps) - 1)].matrix
            proj_excess = max(proj_excess, operator_norm(p_perp @ qs[n].matrix) - bound)
            chain = (eye - qs[m].matrix) @ _tail_product(qs, m + 1, n)
            chain_excess = max(chain_excess, operator_norm(chain) - bound)
    if len(qs) < 2:
        proj_excess = chain_excess = 0.0
    return ChainBoundReport(projection_excess=float(proj_excess), chain_excess=float(chain_excess))
