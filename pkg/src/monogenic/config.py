"""Run configuration: effort budgets, limits and output format.

Values come from a JSON file named by ``--config`` or, failing that, by the
``MONOGENIC_CONFIG`` environment variable. Missing keys keep their defaults.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Mapping

from .arith import Effort

ENV_VAR = "MONOGENIC_CONFIG"
OUTPUT_FORMATS = ("json", "text")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    trial_bound: int = 10**6
    rho_iterations: int = 200_000
    search_limit: int = 10_000
    table_cap: int = 200
    witness_prime_bound: int = 2000
    density_bound: int = 1000
    output_format: str = "json"
    corpus_path: str = "corpus"

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if f.type == "int" and (not isinstance(value, int) or isinstance(value, bool) or value < 1):
                raise ConfigError(f"{f.name} must be a positive integer, got {value!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if not isinstance(self.corpus_path, str) or not self.corpus_path:
            raise ConfigError("corpus_path must be a non-empty string")

    @property
    def effort(self) -> Effort:
        return Effort(self.trial_bound, self.rho_iterations)

    def to_json(self) -> dict:
        return asdict(self)

    def updated(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def config_from_mapping(data: Mapping) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    return RunConfig(**data)


def load_config(path: str | os.PathLike | None = None, environ: Mapping[str, str] | None = None) -> RunConfig:
    """Explicit path first, then the environment variable, then defaults."""
    env = os.environ if environ is None else environ
    if path is None:
        path = env.get(ENV_VAR) or None
    if path is None:
        return RunConfig()
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return config_from_mapping(data)
