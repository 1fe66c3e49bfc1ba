"""
Continuous functional calculus for piecewise-linear real functions.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from modules.errors import ArgumentError
from .decomposition import decompose
from .operators import HermitianOperator
from .tolerance import DEFAULT_TOLERANCES, ToleranceConfig


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """
    Continuous function given by its values at ascending breakpoints,
    linear in between and constant outside [breakpoints[0], breakpoints[-1]].
    """

    breakpoints: Tuple[float, ...]
    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.breakpoints) == 0 or len(self.breakpoints) != len(self.values):
            raise ArgumentError("breakpoints and values must be non-empty and of equal length")
        if not np.all(np.isfinite(self.breakpoints)) or not np.all(np.isfinite(self.values)):
            raise ArgumentError("breakpoints and values must be finite")
        if np.any(np.diff(self.breakpoints) <= 0):
            raise ArgumentError("breakpoints must be strictly ascending")

    def __call__(self, x):
        return np.interp(x, self.breakpoints, self.values)

    @classmethod
    def from_points(cls, breakpoints: Sequence[float], values: Sequence[float]) -> "PiecewiseLinearFunction":
        return cls(tuple(float(b) for b in breakpoints), tuple(float(v) for v in values))

    @classmethod
    def constant(cls, c: float) -> "PiecewiseLinearFunction":
        return cls((0.0,), (float(c),))

    @classmethod
    def identity_on(cls, lo: float, hi: float) -> "PiecewiseLinearFunction":
        """x ↦ x on [lo, hi]; exact identity on any spectrum inside that interval."""
        return cls((float(lo), float(hi)), (float(lo), float(hi)))

    @classmethod
    def ramp_down(cls, a: float, b: float) -> "PiecewiseLinearFunction":
        """1 on (−∞, a], 0 on [b, ∞), linear in between."""
        return cls((float(a), float(b)), (1.0, 0.0))


def apply_function(S, f: PiecewiseLinearFunction,
                   cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> HermitianOperator:
    """f(S) = Σ f(λᵢ)Πᵢ over the clustered decomposition of S."""
    dec = decompose(S, cfg)
    out = np.zeros((dec.dim, dec.dim), dtype=complex)
    for lam, proj in zip(dec.eigenvalues, dec.projectors):
        out += float(f(lam)) * proj.matrix
    return HermitianOperator((out + out.conj().T) / 2)
