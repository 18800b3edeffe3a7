"""Experiment configuration in a ``key = value`` text format.

Blank lines and lines starting with ``#`` are ignored.  The reserved keys are
``experiment``, ``seed``, ``precision`` and ``out``; every other key is an
experiment parameter.  Values are kept as strings and converted on use, so a
config written back with :meth:`ExperimentConfig.to_text` replays exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

RESERVED = ("experiment", "seed", "precision", "out")


class ConfigError(ValueError):
    """Malformed configuration or system specification."""


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    params: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    precision: int = 256
    out: str = "lab-output"

    def get(self, key: str, default: str, kind: Callable = str):
        raw = self.params.get(key, default)
        try:
            return kind(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc

    def ints(self, key: str, default: str) -> List[int]:
        return [int(float(v)) for v in _split(self.params.get(key, default))]

    def floats(self, key: str, default: str) -> List[float]:
        return [float(v) for v in _split(self.params.get(key, default))]

    def rngs(self, count: int, stream: int = 0) -> List[np.random.Generator]:
        """Independent generators derived from ``(seed, stream, trial)``."""
        return [np.random.default_rng([self.seed, stream, i]) for i in range(count)]

    def with_overrides(self, seed: Optional[int] = None, out: Optional[str] = None, params: Optional[Dict[str, str]] = None):
        merged = dict(self.params)
        merged.update(params or {})
        return replace(
            self,
            seed=self.seed if seed is None else int(seed),
            out=self.out if out is None else str(out),
            params=merged,
        )

    def to_text(self) -> str:
        lines = [f"experiment = {self.experiment}", f"seed = {self.seed}", f"precision = {self.precision}", f"out = {self.out}"]
        lines += [f"{k} = {v}" for k, v in sorted(self.params.items())]
        return "\n".join(lines) + "\n"


def _split(value: str) -> List[str]:
    return [v.strip() for v in str(value).split(";") if v.strip()]


def parse_config_text(text: str, experiment: Optional[str] = None) -> ExperimentConfig:
    """Parse ``key = value`` lines into a config."""
    values: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    name = values.pop("experiment", None)
    if experiment is not None and name is not None and name != experiment:
        raise ConfigError(f"config is for {name!r}, not {experiment!r}")
    name = experiment or name
    if not name:
        raise ConfigError("no experiment named")
    try:
        seed = int(values.pop("seed", 0))
        precision = int(values.pop("precision", 256))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    out = values.pop("out", "lab-output")
    return ExperimentConfig(name, values, seed, precision, out)


def load_config(path, experiment: Optional[str] = None) -> ExperimentConfig:
    return parse_config_text(Path(path).read_text(), experiment)


def parse_assignments(items: Sequence[str]) -> Dict[str, str]:
    """``["k=v", ...]`` to a dict."""
    out = {}
    for item in items:
        if "=" not in item:
            raise ConfigError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out
