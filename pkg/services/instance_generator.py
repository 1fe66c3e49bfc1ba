"""
Instance Generator - воспроизводимые случайные экземпляры для проверок.

Every instance is drawn from its own PCG64 stream seeded by
SeedSequence(seed, spawn_key=(suite_index, instance_index)), so an instance
depends only on (seed, suite, index) and never on execution order.
"""

from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg as la

from modules.algebra import BlockAlgebra, Morphism
from modules.errors import ConfigError

GENERATOR_VERSION = "pcg64-seedseq-v1"
MIN_DIM = 2


class InstanceGenerator:
    """Генератор случайных матриц, проекций и блочных алгебр."""

    VERSION = GENERATOR_VERSION

    def __init__(self, seed: int):
        """
        Args:
            seed: 64-битное неотрицательное целое
        """
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
            raise ConfigError(f"seed must be an integer in [0, 2^64), got {seed!r}")
        self.seed = seed

    def rng(self, suite_index: int, instance_index: int) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(suite_index, instance_index))
        return np.random.Generator(np.random.PCG64(seq))

    # ----- primitives --------------------------------------------------

    @staticmethod
    def dim(rng: np.random.Generator, max_dim: int, cap: int = 16) -> int:
        """Размерность в [2, min(cap, max_dim)]; ограничения ниже 2 поднимаются до 2."""
        hi = max(MIN_DIM, min(cap, max_dim))
        return int(rng.integers(MIN_DIM, hi + 1))

    @staticmethod
    def unitary(rng: np.random.Generator, n: int) -> np.ndarray:
        """Haar-распределённая унитарная матрица (QR с нормировкой фаз)."""
        z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        q, r = la.qr(z)
        d = np.diag(r)
        return q * (d / np.abs(d))

    @staticmethod
    def hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
        a = scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        return (a + a.conj().T) / 2

    @staticmethod
    def projector(basis: np.ndarray) -> np.ndarray:
        return basis @ basis.conj().T

    @staticmethod
    def projection(rng: np.random.Generator, n: int, rank: int = None) -> np.ndarray:
        """Случайная проекция ранга rank (по умолчанию 1..n−1)."""
        if rank is None:
            rank = int(rng.integers(1, n))
        return InstanceGenerator.projector(InstanceGenerator.unitary(rng, n)[:, :rank])

    @staticmethod
    def family_with_meet(rng: np.random.Generator, n: int, k: int, meet_rank: int) -> Tuple[List[np.ndarray], np.ndarray]:
        """
        k проекций, содержащих общее подпространство ранга meet_rank.

        Returns:
            (проекции, базис общего подпространства)
        """
        u = InstanceGenerator.unitary(rng, n)
        common, rest = u[:, :meet_rank], u[:, meet_rank:]
        out = []
        for _ in range(k):
            free = n - meet_rank
            extra = int(rng.integers(0, free)) if free > 1 else 0
            extra_basis = rest @ InstanceGenerator.unitary(rng, free)[:, :extra] if free else rest[:, :0]
            out.append(InstanceGenerator.projector(np.hstack([common, extra_basis])))
        return out, common

    @staticmethod
    def commuting_projection(rng: np.random.Generator, n: int) -> np.ndarray:
        """Диагональная 0/1 проекция, не нулевая и не единичная."""
        diag = np.zeros(n)
        chosen = rng.choice(n, size=int(rng.integers(1, n)), replace=False)
        diag[chosen] = 1.0
        return np.diag(diag).astype(complex)

    # ----- block algebras ----------------------------------------------

    @staticmethod
    def quotient_morphism(rng: np.random.Generator, min_target_dim: int = 1,
                          max_blocks: int = 4, max_block_dim: int = 4) -> Morphism:
        """Сюръективный морфизм: случайный выбор блоков и унитарные сопряжения."""
        while True:
            dims = [int(d) for d in rng.integers(1, max_block_dim + 1, size=int(rng.integers(1, max_blocks + 1)))]
            keep = [int(s) for s in rng.permutation(len(dims))[:int(rng.integers(1, len(dims) + 1))]]
            if sum(dims[s] for s in keep) >= min_target_dim:
                break
        source = BlockAlgebra.of(dims)
        return Morphism.from_assignment(source, [(s, InstanceGenerator.unitary(rng, dims[s])) for s in keep])

    @staticmethod
    def nested_block_projections(rng: np.random.Generator, m: Morphism):
        """
        R ≤ P in the source and q with π(R) ≤ q ≤ π(P) in the target.

        Returns:
            (R blocks, P blocks, q blocks)
        """
        r_blocks, p_blocks, q_blocks = [], [], []
        lower_inside, gap_inside = {}, {}
        for s, d in enumerate(m.source.block_dims):
            p_rank = int(rng.integers(0, d + 1))
            basis = InstanceGenerator.unitary(rng, d)[:, :p_rank]
            w = InstanceGenerator.unitary(rng, p_rank) if p_rank else np.zeros((0, 0), dtype=complex)
            r_rank = int(rng.integers(0, p_rank + 1))
            lower, gap = basis @ w[:, :r_rank], basis @ w[:, r_rank:]
            p_blocks.append(InstanceGenerator.projector(basis))
            r_blocks.append(InstanceGenerator.projector(lower))
            lower_inside[s], gap_inside[s] = lower, gap
        for s, U in m.assignment:
            gap = gap_inside[s]
            extra = int(rng.integers(0, gap.shape[1] + 1))
            q_blocks.append(InstanceGenerator.projector(U @ np.hstack([lower_inside[s], gap[:, :extra]])))
        return r_blocks, p_blocks, q_blocks

    @staticmethod
    def pregap(rng: np.random.Generator, target: BlockAlgebra) -> Tuple[List[List[np.ndarray]], List[List[np.ndarray]]]:
        """
        Increasing p's and decreasing q's along one random flag, with at
        least two flag steps between the last p and the last q.
        """
        frames = [InstanceGenerator.unitary(rng, d) for d in target.block_dims]
        slots = [(j, c) for j, d in enumerate(target.block_dims) for c in range(d)]
        order = [slots[i] for i in rng.permutation(len(slots))]
        total = len(order)

        def element(size: int) -> List[np.ndarray]:
            cols = {j: [] for j in range(len(frames))}
            for j, c in order[:size]:
                cols[j].append(c)
            return [InstanceGenerator.projector(frames[j][:, sorted(cols[j])]) for j in range(len(frames))]

        a = sorted(int(x) for x in rng.integers(0, total - 1, size=int(rng.integers(1, 4))))
        b = sorted((int(x) for x in rng.integers(a[-1] + 2, total + 1, size=int(rng.integers(1, 4)))), reverse=True)
        return [element(x) for x in a], [element(x) for x in b]

    @staticmethod
    def spectral_subprojection(rng: np.random.Generator, S_blocks: Sequence[np.ndarray], t: float,
                               upper: bool) -> List[np.ndarray]:
        """
        upper=True: a random part of E_S(t) (antecedent P ≤ E_S(t)).
        upper=False: E_S(t−) plus random eigenvectors above t (antecedent E_S(t−) ≤ P).
        """
        out = []
        for b in S_blocks:
            w, v = la.eigh(b)
            below = w < t
            pick = rng.random(w.size) < 0.5
            keep = (below & pick) if upper else (below | pick)
            out.append(InstanceGenerator.projector(v[:, keep]))
        return out
