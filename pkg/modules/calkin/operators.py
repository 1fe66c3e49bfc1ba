"""
Block-diagonal operator sequences, a desk-scale model of B(H)/K(H).

An operator is an index-deterministic generator of finite blocks; only a
truncation to N blocks is ever evaluated, and essential quantities are read
off tail windows of that truncation.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np
import scipy.linalg as la

from modules.errors import ArgumentError, ConfigError

MIN_TRUNCATION = 8

BlockGenerator = Callable[[int], np.ndarray]


@dataclass(frozen=True)
class BlockSequenceOperator:
    generator: BlockGenerator
    N: int
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or self.N < 1:
            raise ConfigError(f"truncation N must be a positive integer, got {self.N!r}")

    def block(self, n: int) -> np.ndarray:
        return np.asarray(self.generator(n), dtype=complex)

    def block_dim_at(self, n: int) -> int:
        return self.block(n).shape[0]

    def blocks(self, start: int, stop: int) -> List[np.ndarray]:
        return [self.block(n) for n in range(start, stop)]

    @property
    def tail_window(self) -> Tuple[int, int]:
        return self.N // 2, self.N

    def with_truncation(self, N: int) -> "BlockSequenceOperator":
        return BlockSequenceOperator(self.generator, N, self.name)

    def _combine(self, other: "BlockSequenceOperator", op, name: str) -> "BlockSequenceOperator":
        if self.N != other.N:
            raise ArgumentError(f"truncations differ: {self.N} vs {other.N}")
        return BlockSequenceOperator(lambda n: op(self.block(n), other.block(n)), self.N, name)

    def __matmul__(self, other: "BlockSequenceOperator") -> "BlockSequenceOperator":
        return self._combine(other, lambda a, b: a @ b, f"{self.name}{other.name}")

    def __sub__(self, other: "BlockSequenceOperator") -> "BlockSequenceOperator":
        return self._combine(other, lambda a, b: a - b, f"{self.name}−{other.name}")

    def adjoint(self) -> "BlockSequenceOperator":
        return BlockSequenceOperator(lambda n: self.block(n).conj().T, self.N, f"{self.name}*")

    def complement(self) -> "BlockSequenceOperator":
        """1 − T, blockwise."""
        def gen(n):
            b = self.block(n)
            return np.eye(b.shape[0]) - b
        return BlockSequenceOperator(gen, self.N, f"{self.name}⊥")

    def truncation(self) -> np.ndarray:
        """Dense block-diagonal matrix of the first N blocks."""
        return la.block_diag(*self.blocks(0, self.N))


def check_truncation(T: BlockSequenceOperator) -> None:
    if T.N < MIN_TRUNCATION:
        raise ConfigError(f"essential estimates need N ≥ {MIN_TRUNCATION}, got {T.N}")
