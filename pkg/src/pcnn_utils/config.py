"""Configuration and environment utilities.

Environment variables set run-wide defaults (output directory, verbosity,
run logs); an experiment is described by one JSON file whose values CLI
flags can override. The result is an immutable ExperimentConfig.
"""

import json
import os
from dataclasses import dataclass, field, fields
from datetime import datetime, timezone

from periodic_cnn.constants import (
    DEFAULT_BOX, DEFAULT_CANDIDATES, DEFAULT_GRID, DEFAULT_KNOTS,
    DEFAULT_N_SAMPLES, DEFAULT_OUT,
)
from periodic_cnn.errors import ConfigError
from periodic_cnn.profiles import PROFILES, is_rising

LOG_LEVELS = ("quiet", "info", "debug")


# =============================================================================
# Environment
# =============================================================================

def get_log_level() -> str:
    return os.environ.get('PCNN_LOG', 'info').lower()


def get_out_dir() -> str:
    """Default output directory. Override with PCNN_OUT or --out."""
    return os.environ.get('PCNN_OUT', DEFAULT_OUT)


def get_log_dir() -> str | None:
    """Directory for CSV run logs; logging to files is off when unset."""
    return os.environ.get('PCNN_LOG_DIR') or None


def get_run_id() -> str:
    return os.environ.get('PCNN_RUN_ID') or datetime.now(timezone.utc).strftime('run-%Y%m%d-%H%M%S')


def validate_environment():
    level = get_log_level()
    if level not in LOG_LEVELS:
        raise ConfigError(f"PCNN_LOG must be one of {LOG_LEVELS}, got '{level}'")


def get_fs(uri: str = ""):
    """fsspec filesystem for a URI; local paths get auto_mkdir."""
    import fsspec
    protocol = uri.split("://", 1)[0] if "://" in uri else "file"
    if protocol == "file":
        return fsspec.filesystem("file", auto_mkdir=True)
    return fsspec.filesystem(protocol)


# =============================================================================
# Experiment configuration
# =============================================================================

@dataclass(frozen=True)
class ExperimentConfig:
    seed: int
    d: int = 6
    s: int = 2
    box: tuple[tuple[float, float], ...] = ()
    knots: tuple[int, ...] = DEFAULT_KNOTS
    grid: int = DEFAULT_GRID
    out_dir: str = field(default_factory=get_out_dir)
    profile: str = "cos"
    profile_params: dict = field(default_factory=dict)
    n_samples: int = DEFAULT_N_SAMPLES
    direction: tuple[int, ...] | None = None
    n_candidates: int = DEFAULT_CANDIDATES

    def __post_init__(self):
        if not self.box:
            object.__setattr__(self, "box", (DEFAULT_BOX,) * self.d)
        object.__setattr__(self, "box", tuple(tuple(float(v) for v in b) for b in self.box))
        object.__setattr__(self, "knots", tuple(int(n) for n in self.knots))
        if self.direction is not None:
            object.__setattr__(self, "direction", tuple(int(a) for a in self.direction))

    def validate(self) -> "ExperimentConfig":
        if not 2 <= self.s <= self.d:
            raise ConfigError(f"need 2 <= s <= d, got s={self.s}, d={self.d}")
        if self.d < 3:
            raise ConfigError(f"need d >= 3, got {self.d}")
        if self.profile not in PROFILES:
            raise ConfigError(f"unknown profile '{self.profile}'; choose from {sorted(PROFILES)}")
        # falling knots need a second accumulator, which needs width 5
        if self.d < 5 and not is_rising(self.profile):
            raise ConfigError(f"profile '{self.profile}' needs d >= 5, got {self.d}")
        if not self.knots or min(self.knots) < 1:
            raise ConfigError(f"knot counts must be >= 1, got {self.knots}")
        if self.grid < 2:
            raise ConfigError(f"grid must be >= 2, got {self.grid}")
        if self.n_samples < 1 or self.n_candidates < 0:
            raise ConfigError("n_samples must be >= 1 and n_candidates >= 0")
        if len(self.box) != self.d or any(len(b) != 2 or b[0] > b[1] for b in self.box):
            raise ConfigError(f"box must list {self.d} [lo, hi] pairs with lo <= hi")
        if self.direction is not None and (len(self.direction) != self.d or not any(self.direction)):
            raise ConfigError(f"direction must be a nonzero integer vector of length {self.d}")
        return self

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_FIELDS = {f.name for f in fields(ExperimentConfig)}


def load_config(path: str | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Read a JSON config and apply non-None overrides. The seed is mandatory."""
    data = {}
    if path:
        try:
            with get_fs(path).open(path, "r") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {path} is not valid JSON: {e}") from e

    unknown = set(data) - _FIELDS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})

    if data.get("seed") is None:
        raise ConfigError("a seed is required (config 'seed' or --seed)")
    # box defaults depend on d, so an overridden d must not keep a stale box
    d_override = (overrides or {}).get("d")
    if d_override is not None and "box" in data and len(data["box"]) != d_override:
        data.pop("box")
    try:
        return ExperimentConfig(**data).validate()
    except TypeError as e:
        raise ConfigError(str(e)) from e
