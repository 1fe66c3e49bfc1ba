"""
Projection pairs in the block model whose quotient images misbehave.

badpq: P and Q with P ∧ Q = 0 at every truncation but π(P) = π(Q).
pomega: every badpq overlap repeated infinitely often, so σ(π(PQP)) keeps
each value (n+1)²/((n+1)²+1) and no greatest lower bound survives.
"""

import math
from typing import Sequence, Tuple

import numpy as np

from modules.errors import ArgumentError
from modules.spectra import Projection, as_matrix
from .operators import BlockSequenceOperator

FamilyPair = Tuple[BlockSequenceOperator, BlockSequenceOperator]

_P_BLOCK = np.diag([1.0, 0.0]).astype(complex)


def badpq_p_block(n: int) -> np.ndarray:
    return _P_BLOCK.copy()


def badpq_q_block(n: int) -> np.ndarray:
    v = np.array([1.0, 1.0 / (n + 1)], dtype=complex)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def badpq_overlap(n: int) -> float:
    """‖P_n Q_n‖² for block n, in closed form."""
    return (n + 1) ** 2 / ((n + 1) ** 2 + 1)


def badpq_family(N: int) -> FamilyPair:
    return (BlockSequenceOperator(badpq_p_block, N, "P"),
            BlockSequenceOperator(badpq_q_block, N, "Q"))


def pomega_index(n: int) -> int:
    """
    badpq block shown at position n.

    Positions are read row by row from the triangle 0 | 0 1 | 0 1 2 | ...,
    so every badpq index recurs in every tail of the sequence.
    """
    row = (math.isqrt(8 * n + 1) - 1) // 2
    return n - row * (row + 1) // 2


def pomega_family(N: int) -> FamilyPair:
    return (BlockSequenceOperator(lambda n: badpq_p_block(pomega_index(n)), N, "Pω"),
            BlockSequenceOperator(lambda n: badpq_q_block(pomega_index(n)), N, "Qω"))


def custom_family(p_blocks: Sequence, q_blocks: Sequence, N: int) -> FamilyPair:
    """Pair built from finite lists of projection blocks, cycled by index."""
    if not p_blocks or len(p_blocks) != len(q_blocks):
        raise ArgumentError("custom family needs equally many P and Q blocks, at least one")
    ps = [Projection.from_matrix(as_matrix(b)).matrix for b in p_blocks]
    qs = [Projection.from_matrix(as_matrix(b)).matrix for b in q_blocks]
    for i, (p, q) in enumerate(zip(ps, qs)):
        if p.shape != q.shape:
            raise ArgumentError(f"custom block {i}: P is {p.shape}, Q is {q.shape}")
    return (BlockSequenceOperator(lambda n: ps[n % len(ps)], N, "P"),
            BlockSequenceOperator(lambda n: qs[n % len(qs)], N, "Q"))


def constant_family(block, N: int, name: str = "") -> BlockSequenceOperator:
    b = np.array(as_matrix(block))
    return BlockSequenceOperator(lambda n: b, N, name)


def identity_like(T: BlockSequenceOperator) -> BlockSequenceOperator:
    """Identity with the block sizes of T."""
    return BlockSequenceOperator(lambda n: np.eye(T.block_dim_at(n), dtype=complex), T.N, "1")
