"""Run configuration and the flat ``key = value`` config-file format."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .convergence import DEFAULT_DELTA_TOL, DEFAULT_PLATEAU_TOL, DEFAULT_WINDOW
from .errors import ConfigError
from .hamiltonian import FINE_STRUCTURE


@dataclass(frozen=True)
class RunConfig:
    z: int = 100
    kappa: int = -1
    alpha: float = FINE_STRUCTURE
    gamma: float = 0.0998
    n_points: int = 2000
    r_max: float = 40.0
    max_iterations: int = 40
    window: int = DEFAULT_WINDOW
    delta_tol: float = DEFAULT_DELTA_TOL
    plateau_tol: float = DEFAULT_PLATEAU_TOL
    oracle_tol: float = 1e-3
    output_prefix: str = "dirac_lanczos"
    start_vector: str = "bethe"
    exponent_rule: str = "product"
    random_seed: int | None = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be >= 1")
        if self.start_vector not in ("bethe", "random"):
            raise ConfigError(f"start_vector must be 'bethe' or 'random', got {self.start_vector!r}")
        if self.start_vector == "random" and self.random_seed is None:
            raise ConfigError("a random start vector needs random_seed for reproducibility")
        if self.oracle_tol <= 0:
            raise ConfigError("oracle_tol must be positive")

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_INT_KEYS = {"z", "kappa", "n_points", "max_iterations", "window", "random_seed"}
_FLOAT_KEYS = {"alpha", "gamma", "r_max", "delta_tol", "plateau_tol", "oracle_tol"}


def normalize_key(key: str) -> str:
    return key.strip().replace("-", "_")


def coerce(key: str, raw: Any) -> Any:
    key = normalize_key(key)
    if key not in _FIELDS:
        raise ConfigError(f"unknown config key {key!r}")
    if raw is None or not isinstance(raw, str):
        return raw
    raw = raw.strip()
    try:
        if key in _INT_KEYS:
            if key == "random_seed" and raw.lower() in ("", "none"):
                return None
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = line.split("=", 1)
        key = normalize_key(key)
        values[key] = coerce(key, raw)
    return values


def load_config(path: str | Path | None = None, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """Build a RunConfig from an optional file plus overrides; overrides win."""
    values: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        values.update(parse_config_text(text, str(path)))
    for key, raw in (overrides or {}).items():
        if raw is not None:
            values[normalize_key(key)] = coerce(key, raw)
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def dump_config(config: RunConfig) -> str:
    return "".join(f"{k} = {v}\n" for k, v in dataclasses.asdict(config).items())
