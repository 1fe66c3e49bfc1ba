"""
Validated settings of one command-line invocation.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from modules.errors import ConfigError
from modules.spectra import ToleranceConfig

MAX_DIM_CAP = 64
FORMATS = ("json", "text")
METHODS = ("recursive", "spectral")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    tolerances: ToleranceConfig
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    output_format: str = "json"
    seed: Optional[int] = None
    count: Optional[int] = None
    max_dim: int = 16
    suites: Tuple[str, ...] = field(default_factory=tuple)
    family: Optional[str] = None
    N: Optional[int] = None
    method: str = "recursive"
    db_url: Optional[str] = None
    record_id: Optional[int] = None
    limit: int = 20
    schedule_depth: int = 16
    workers: int = 4

    def __post_init__(self) -> None:
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}; expected one of {FORMATS}")
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not 1 <= self.max_dim <= MAX_DIM_CAP:
            raise ConfigError(f"--max-dim must be in 1..{MAX_DIM_CAP}, got {self.max_dim}")
        if self.subcommand == "verify":
            if self.seed is None:
                raise ConfigError("verify needs --seed")
            if not 0 <= self.seed < 2 ** 64:
                raise ConfigError(f"--seed must fit in 64 bits, got {self.seed}")
        if self.count is not None and self.count < 1:
            raise ConfigError(f"--count must be positive, got {self.count}")
        if self.limit < 1:
            raise ConfigError(f"--limit must be positive, got {self.limit}")
