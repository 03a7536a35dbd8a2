"""
Run files: plain ``key = value`` lines with ``#`` comments.

Recognized keys are re, M, dt, dx, source, alpha, chi, method and swap; any
other key is an error. Command-line flags override file values, and omitted
keys fall back to the Earth reference parameters.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, Extra, ValidationError

from .config import (
    DEFAULT_ALPHA,
    DEFAULT_CHI,
    DEFAULT_D_T,
    DEFAULT_D_X,
    DEFAULT_MASS_PARAMETER,
    DEFAULT_REFERENCE_RADIUS,
)
from .errors import ConfigError
from .experiment import ExperimentConfig
from .geometry import DeltaMethod, MetricContext, PathGeometry
from .modes import ModeFunction, gaussian_mode
from .opalg import Coherent, Pdc, SourceModel

SETTINGS_KEYS = ("re", "M", "dt", "dx", "source", "alpha", "chi", "method", "swap")


class RunSettings(BaseModel):
    re: float = DEFAULT_REFERENCE_RADIUS
    M: float = DEFAULT_MASS_PARAMETER
    dt: float = DEFAULT_D_T
    dx: float = DEFAULT_D_X
    source: Literal["pdc", "coherent"] = "pdc"
    alpha: float = DEFAULT_ALPHA
    chi: float = DEFAULT_CHI
    # the published decoherence curve uses the weak-field Delta
    method: Literal["exact", "weak"] = "weak"
    swap: bool = False

    class Config:
        extra = Extra.forbid
        allow_mutation = False

    def build_source(self) -> SourceModel:
        if self.source == "coherent":
            return Coherent(self.alpha)
        return Pdc(self.chi)

    def to_experiment(self, height: float = 0.0, mode: Optional[ModeFunction] = None) -> ExperimentConfig:
        """Validated domain objects; raises DomainError, InvalidWidthError or SourceError."""
        return ExperimentConfig(
            metric=MetricContext(mass_parameter=self.M, reference_radius=self.re),
            path=PathGeometry(float(height)),
            mode=mode if mode is not None else gaussian_mode(self.dt, self.dx),
            source=self.build_source(),
            delta_method=DeltaMethod(self.method),
            swap_paths=self.swap,
        )

    def manifest_items(self) -> List[Tuple[str, Any]]:
        return [(key, getattr(self, key)) for key in SETTINGS_KEYS]

    @classmethod
    def from_manifest(cls, manifest: Mapping[str, str]) -> "RunSettings":
        return cls(**{key: manifest[key] for key in SETTINGS_KEYS if key in manifest})


def parse_run_file(text: str) -> Dict[str, Tuple[str, int]]:
    """Map each key to (raw value, line number)."""
    values: Dict[str, Tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SETTINGS_KEYS:
            raise ConfigError(f"unknown key {key!r} (allowed: {', '.join(SETTINGS_KEYS)})", line=lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}, first set on line {values[key][1]}", line=lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", line=lineno)
        values[key] = (value, lineno)
    return values


def load_settings(
    path: Optional[Union[str, Path]] = None, overrides: Optional[Mapping[str, Any]] = None
) -> RunSettings:
    parsed: Dict[str, Tuple[str, int]] = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read run file {path}: {e}") from e
        parsed = parse_run_file(text)
    flags = {k: v for k, v in (overrides or {}).items() if v is not None}
    merged: Dict[str, Any] = {key: value for key, (value, _) in parsed.items()}
    merged.update(flags)
    try:
        return RunSettings(**merged)
    except ValidationError as e:
        first = e.errors()[0]
        key = str(first["loc"][0]) if first.get("loc") else ""
        line = parsed[key][1] if key in parsed and key not in flags else None
        raise ConfigError(f"invalid value for {key!r}: {first['msg']}", line=line) from e


def load_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    height: float = 0.0,
    mode: Optional[ModeFunction] = None,
) -> ExperimentConfig:
    """Parse a run file (plus flag overrides) into a validated ExperimentConfig."""
    return load_settings(path, overrides).to_experiment(height=height, mode=mode)
