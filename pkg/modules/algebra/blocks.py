"""
Finite-dimensional C*-algebras as direct sums of full matrix blocks, and
surjective homomorphisms in block-selection form.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import scipy.linalg as la

from modules.errors import ArgumentError
from modules.projorder import leq
from modules.spectra import DEFAULT_TOLERANCES, Projection, ToleranceConfig, as_matrix, operator_norm
from modules.spectra.operators import PROJECTION_TOL
from modules.spectra.subspaces import check_finite

UNITARY_TOL = 1e-9


@dataclass(frozen=True)
class BlockAlgebra:
    block_dims: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.block_dims or any(not isinstance(d, int) or d <= 0 for d in self.block_dims):
            raise ArgumentError(f"block dimensions must be a non-empty list of positive integers, got {self.block_dims}")

    @classmethod
    def of(cls, dims: Sequence[int]) -> "BlockAlgebra":
        return cls(tuple(int(d) for d in dims))

    @property
    def dim(self) -> int:
        return sum(self.block_dims)

    def element(self, blocks: Sequence) -> "AlgebraElement":
        return AlgebraElement.from_blocks(self, blocks)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, tuple(np.zeros((d, d), dtype=complex) for d in self.block_dims))

    def identity(self) -> "AlgebraElement":
        return AlgebraElement(self, tuple(np.eye(d, dtype=complex) for d in self.block_dims))


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: BlockAlgebra
    blocks: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        for b in self.blocks:
            b.setflags(write=False)

    @classmethod
    def from_blocks(cls, algebra: BlockAlgebra, blocks: Sequence) -> "AlgebraElement":
        if len(blocks) != len(algebra.block_dims):
            raise ArgumentError(f"expected {len(algebra.block_dims)} blocks, got {len(blocks)}")
        arrays = []
        for i, (b, d) in enumerate(zip(blocks, algebra.block_dims)):
            arr = np.array(as_matrix(b), dtype=complex)
            if arr.shape != (d, d):
                raise ArgumentError(f"block {i} has shape {arr.shape}, expected {(d, d)}")
            check_finite(arr, f"block {i}")
            arrays.append(arr)
        return cls(algebra, tuple(arrays))

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra != other.algebra:
            raise ArgumentError(f"algebra mismatch: {self.algebra.block_dims} vs {other.algebra.block_dims}")

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(b.conj().T for b in self.blocks))

    def real_part(self) -> "AlgebraElement":
        """(x + x*)/2."""
        return AlgebraElement(self.algebra, tuple((b + b.conj().T) / 2 for b in self.blocks))

    def norm(self) -> float:
        return max(operator_norm(b) for b in self.blocks)

    def dense(self) -> np.ndarray:
        return la.block_diag(*self.blocks)

    def is_self_adjoint(self, tol: float = PROJECTION_TOL) -> bool:
        return all(operator_norm(b - b.conj().T) <= tol for b in self.blocks)

    def is_projection(self, tol: float = PROJECTION_TOL) -> bool:
        return self.is_self_adjoint(tol) and all(operator_norm(b @ b - b) <= tol for b in self.blocks)

    def projections(self, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Tuple[Projection, ...]:
        """Blockwise Projection values; raises if any block is not a projection."""
        return tuple(Projection.from_matrix(b, cfg) for b in self.blocks)

    @classmethod
    def from_projections(cls, algebra: BlockAlgebra, ps: Sequence[Projection]) -> "AlgebraElement":
        return cls.from_blocks(algebra, [p.matrix for p in ps])


def element_leq(x: AlgebraElement, y: AlgebraElement, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Projection order x ≤ y, block by block."""
    x._check(y)
    return all(leq(a, b, cfg) for a, b in zip(x.projections(cfg), y.projections(cfg)))


def elements_close(x: AlgebraElement, y: AlgebraElement, tol: float) -> bool:
    x._check(y)
    return all(operator_norm(a - b) <= tol for a, b in zip(x.blocks, y.blocks))


@dataclass(frozen=True, eq=False)
class Morphism:
    """
    π(x)_j = U_j x_{s_j} U_j* for each target block j.

    assignment[j] = (s_j, U_j). Source blocks not selected form the kernel.
    """

    source: BlockAlgebra
    target: BlockAlgebra
    assignment: Tuple[Tuple[int, np.ndarray], ...]

    def __post_init__(self) -> None:
        if len(self.assignment) != len(self.target.block_dims):
            raise ArgumentError("one assignment entry is required per target block")
        for j, (s, U) in enumerate(self.assignment):
            if not 0 <= s < len(self.source.block_dims):
                raise ArgumentError(f"target block {j} selects missing source block {s}")
            d = self.source.block_dims[s]
            if self.target.block_dims[j] != d or U.shape != (d, d):
                raise ArgumentError(f"target block {j} does not match source block {s} (dim {d})")
            if operator_norm(U.conj().T @ U - np.eye(d)) > UNITARY_TOL:
                raise ArgumentError(f"conjugation for target block {j} is not unitary")
            U.setflags(write=False)

    @classmethod
    def from_assignment(cls, source: BlockAlgebra, assignment: Sequence[Tuple[int, object]]) -> "Morphism":
        entries = tuple((int(s), np.array(as_matrix(U), dtype=complex)) for s, U in assignment)
        if not entries:
            raise ArgumentError("a morphism needs at least one target block")
        for s, _ in entries:
            if not 0 <= s < len(source.block_dims):
                raise ArgumentError(f"source block {s} does not exist in {source.block_dims}")
        target = BlockAlgebra.of([source.block_dims[s] for s, _ in entries])
        return cls(source, target, entries)

    @classmethod
    def identity(cls, algebra: BlockAlgebra) -> "Morphism":
        return cls.quotient(algebra, range(len(algebra.block_dims)))

    @classmethod
    def quotient(cls, algebra: BlockAlgebra, keep: Sequence[int]) -> "Morphism":
        """Quotient forgetting every source block not in keep."""
        keep = list(keep)
        if not keep:
            raise ArgumentError("a quotient must keep at least one block")
        return cls.from_assignment(algebra, [(s, np.eye(algebra.block_dims[s])) for s in keep])

    @property
    def is_surjective(self) -> bool:
        sources = [s for s, _ in self.assignment]
        return len(set(sources)) == len(sources)

    def kernel_blocks(self) -> Tuple[int, ...]:
        selected = {s for s, _ in self.assignment}
        return tuple(i for i in range(len(self.source.block_dims)) if i not in selected)

    def image_algebra(self) -> BlockAlgebra:
        """Quotient structure: the selected source blocks, in target order."""
        return BlockAlgebra.of([self.source.block_dims[s] for s, _ in self.assignment])


def apply(m: Morphism, x: AlgebraElement) -> AlgebraElement:
    if x.algebra != m.source:
        raise ArgumentError(f"element lives in {x.algebra.block_dims}, morphism source is {m.source.block_dims}")
    return AlgebraElement(m.target, tuple(U @ x.blocks[s] @ U.conj().T for s, U in m.assignment))


def lift(m: Morphism, y: AlgebraElement) -> AlgebraElement:
    """Canonical section: U_j* y_j U_j in the selected block, zero in the kernel blocks."""
    if not m.is_surjective:
        raise ArgumentError("lifting needs a surjective morphism")
    if y.algebra != m.target:
        raise ArgumentError(f"element lives in {y.algebra.block_dims}, morphism target is {m.target.block_dims}")
    blocks = [np.zeros((d, d), dtype=complex) for d in m.source.block_dims]
    for j, (s, U) in enumerate(m.assignment):
        blocks[s] = U.conj().T @ y.blocks[j] @ U
    return AlgebraElement(m.source, tuple(blocks))


def kernel_blocks(m: Morphism) -> Tuple[int, ...]:
    return m.kernel_blocks()
