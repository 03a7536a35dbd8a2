"""
The two-path apparatus: mode 1 stays in the SD-shell, mode 2 climbs a height h
against the field to mirror m2 and falls back.

Results depend only on label differences, so the interaction time t0 and the
vacuum interval sigma_v1 are fixed at zero: label_1 = (0, 0) and
label_2 = (-Delta, -Delta).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional, Tuple

from ..geometry import (
    DeltaMethod,
    MetricContext,
    PathGeometry,
    delta,
    mirror1_distance,
    sd_shell_time_climb,
    shell_time_climb,
)
from ..modes import GaussianMode, ModeFunction, SpaceTimeLabel, overlap
from ..opalg import Coherent, Pdc, SourceModel, coincidence, coincidence_second_order


@dataclass(frozen=True)
class ExperimentConfig:
    metric: MetricContext
    path: PathGeometry
    mode: ModeFunction
    source: SourceModel
    delta_method: DeltaMethod = DeltaMethod.EXACT
    # resend each photon along the other's path before detection
    swap_paths: bool = False

    def with_height(self, height: float) -> "ExperimentConfig":
        return replace(self, path=PathGeometry(float(height)))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "re": self.metric.reference_radius,
            "M": self.metric.mass_parameter,
            "height": self.path.height,
            "source": self.source.kind,
            "method": self.delta_method.value,
            "swap": self.swap_paths,
        }
        if isinstance(self.mode, GaussianMode):
            data["dt"] = self.mode.d_t
            data["dx"] = self.mode.d_x
        else:
            data["mode"] = "tabulated"
        if isinstance(self.source, Pdc):
            data["chi"] = self.source.chi
        else:
            alpha = self.source.alpha
            data["alpha"] = alpha.real if alpha.imag == 0 else str(alpha)
        return data


@dataclass(frozen=True)
class PathBudget:
    """Shell-frame intervals of both photon paths (conditions (i) and (ii))."""

    sigma_s: float
    sigma_c: float
    sigma_f: float
    sigma_v1: float
    sigma_v2: float

    @property
    def sigma_1(self) -> float:
        return 2.0 * self.sigma_s + 2.0 * self.sigma_c + self.sigma_v1

    @property
    def sigma_2(self) -> float:
        return 2.0 * self.sigma_s + 2.0 * self.sigma_f + self.sigma_v2

    @property
    def delta(self) -> float:
        return self.sigma_v1 - self.sigma_v2


@dataclass(frozen=True)
class ScenarioResult:
    height: float
    # effective asymmetry: zero when the paths are swapped
    delta: float
    sigma_c: float
    sigma_sd: float
    overlap: float
    coincidence: float
    normalized: float
    normalized_exact: float
    coincidence_second_order: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def path_budget(config: ExperimentConfig, sigma_s: float = 0.0, sigma_v1: float = 0.0) -> PathBudget:
    sigma_c = shell_time_climb(config.metric, config.path)
    sigma_f = mirror1_distance(config.metric, config.path)
    d = delta(config.metric, config.path, config.delta_method)
    return PathBudget(
        sigma_s=sigma_s,
        sigma_c=sigma_c,
        sigma_f=sigma_f,
        sigma_v1=sigma_v1,
        sigma_v2=sigma_v1 - d,
    )


def effective_delta(config: ExperimentConfig) -> float:
    if config.swap_paths:
        # each photon accumulates sigma_c + sigma_f
        return 0.0
    return delta(config.metric, config.path, config.delta_method)


def evolved_labels(config: ExperimentConfig) -> Tuple[SpaceTimeLabel, SpaceTimeLabel]:
    """Labels of the detector operators evolved back to the source, t0 = sigma_v1 = 0."""
    d = effective_delta(config)
    return SpaceTimeLabel.joint(0.0), SpaceTimeLabel.joint(-d)


def run(config: ExperimentConfig) -> ScenarioResult:
    label_1, label_2 = evolved_labels(config)
    k = overlap(config.mode, label_1, label_2)
    c = coincidence(config.source, label_1, label_2, config.mode)
    second: Optional[float] = None
    if isinstance(config.source, Pdc):
        second = coincidence_second_order(config.source, label_1, label_2, config.mode)
        chi2 = config.source.chi**2
        if chi2 > 0:
            normalized, normalized_exact = second / chi2, c / chi2
        else:
            normalized = normalized_exact = k * k
    elif isinstance(config.source, Coherent):
        scale = abs(config.source.alpha) ** 4
        normalized = normalized_exact = c / scale if scale > 0 else math.nan
    else:
        raise TypeError(f"unsupported source {type(config.source).__name__}")
    return ScenarioResult(
        height=config.path.height,
        delta=label_1.s - label_2.s,
        sigma_c=shell_time_climb(config.metric, config.path),
        sigma_sd=sd_shell_time_climb(config.metric, config.path),
        overlap=k,
        coincidence=c,
        normalized=normalized,
        normalized_exact=normalized_exact,
        coincidence_second_order=second,
    )
