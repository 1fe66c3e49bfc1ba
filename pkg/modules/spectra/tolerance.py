"""
Tolerance policy shared by every numeric operation.
"""

import math
from dataclasses import dataclass, fields, replace

from modules.errors import ConfigError


@dataclass(frozen=True)
class ToleranceConfig:
    """
    Explicit tolerances for clustering, rank and order decisions.

    eig_cluster: single-linkage radius for eigenvalue clusters and the
        inclusion band of spectral cutoffs.
    rank_tol: singular values at or below this count as zero.
    psd_tol: negative-eigenvalue slack allowed in positivity checks.
    order_tol: ‖Q⊥P‖ at or below this means P ≤ Q.
    """

    eig_cluster: float = 1e-9
    rank_tol: float = 1e-10
    psd_tol: float = 1e-10
    order_tol: float = 1e-8

    def __post_init__(self) -> None:
        for item in fields(self):
            value = getattr(self, item.name)
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{item.name} must be a positive finite number, got {value!r}")
        if self.eig_cluster < self.rank_tol:
            raise ConfigError(
                f"eig_cluster ({self.eig_cluster}) must not be smaller than rank_tol ({self.rank_tol})"
            )

    def with_overrides(self, **changes) -> "ToleranceConfig":
        """Copy with the given non-None fields replaced."""
        changes = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {item.name: getattr(self, item.name) for item in fields(self)}


DEFAULT_TOLERANCES = ToleranceConfig()
