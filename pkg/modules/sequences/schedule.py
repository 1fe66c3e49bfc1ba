"""
Cutoff schedule t_{m,n} for the spectral equalizer.

t_{0,n} = 0 and t_{m,n} = 1 − (1 − t_{m−1,n+1}) / (m+n+1)^6. Values are kept
as exact fractions; 1 − t_{m,1} = (m+2)^(−6m) leaves double precision after a
few steps, so numeric cutoffs are clamped below 1 by twice eig_cluster.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from modules.errors import ConfigError

DEFAULT_DEPTH = 16


@lru_cache(maxsize=None)
def _t_exact(m: int, n: int) -> Fraction:
    if m == 0:
        return Fraction(0)
    return 1 - (1 - _t_exact(m - 1, n + 1)) / Fraction(m + n + 1) ** 6


@dataclass(frozen=True)
class ScheduleConfig:
    depth: int = DEFAULT_DEPTH

    def __post_init__(self) -> None:
        if not isinstance(self.depth, int) or self.depth < 2:
            raise ConfigError(f"schedule depth must be an integer ≥ 2, got {self.depth!r}")

    def exact(self, m: int, n: int) -> Fraction:
        if m < 0 or n < 0:
            raise ConfigError(f"schedule indices must be non-negative, got ({m}, {n})")
        if m > self.depth or n > self.depth:
            raise ConfigError(f"schedule depth {self.depth} exceeded at t[{m},{n}]")
        return _t_exact(m, n)

    def t(self, m: int, n: int) -> float:
        return float(self.exact(m, n))

    def cutoff(self, m: int, n: int, eig_cluster: float) -> float:
        """Numeric cutoff min(t_{m,n}, 1 − 2·eig_cluster)."""
        return min(self.t(m, n), 1.0 - 2 * eig_cluster)

    def is_clamped(self, m: int, n: int, eig_cluster: float) -> bool:
        return self.exact(m, n) >= 1 - Fraction(2 * eig_cluster)
