from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from scipy import optimize

from ..errors import NoCrossingError, SourceError
from ..modes import GaussianMode, effective_width
from ..opalg import Pdc
from .scenario import ExperimentConfig, ScenarioResult, run

logger = logging.getLogger(__name__)

HALF = 0.5
# Upper end of the height bracket, in reference radii
BRACKET_RADII = 10.0


def _point(args: Tuple[ExperimentConfig, float]) -> ScenarioResult:
    config, height = args
    return run(config.with_height(height))


def sweep_heights(
    config: ExperimentConfig,
    h_min: float,
    h_max: float,
    steps: int,
    jobs: Optional[int] = None,
) -> List[Tuple[float, ScenarioResult]]:
    """Uniform height grid from h_min to h_max inclusive, results in grid order."""
    if not (0 <= h_min < h_max) or not math.isfinite(h_max):
        raise ValueError(f"need 0 <= h_min < h_max, got h_min={h_min!r}, h_max={h_max!r}")
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps!r}")
    heights = [float(h) for h in np.linspace(h_min, h_max, int(steps))]
    jobs = max(1, int(jobs or 1))
    logger.info("sweep: %d heights in [%g, %g] m, jobs=%d", len(heights), h_min, h_max, jobs)
    t0 = time.perf_counter()
    work = [(config, h) for h in heights]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_point, work))
    else:
        results = [_point(item) for item in work]
    logger.info("sweep finished in %.3f s", time.perf_counter() - t0)
    return list(zip(heights, results))


def _require_decohering(config: ExperimentConfig) -> None:
    if not isinstance(config.source, Pdc):
        raise SourceError("half-decoherence height is defined for a down-conversion source only")
    if config.swap_paths:
        raise NoCrossingError("swapped paths never decohere")


def half_decoherence_height(config: ExperimentConfig, h_max: Optional[float] = None) -> float:
    """Height h* with C_N(h*) = 1/2, by bisection on the monotone curve."""
    _require_decohering(config)
    upper = h_max if h_max is not None else BRACKET_RADII * config.metric.reference_radius

    def excess(h: float) -> float:
        return run(config.with_height(h)).normalized - HALF

    if excess(upper) > 0:
        raise NoCrossingError(f"C_N stays above 1/2 for heights up to {upper:g} m")
    return float(optimize.bisect(excess, 0.0, upper, xtol=1e-6, rtol=1e-14, maxiter=200))


def half_decoherence_height_weak_field(config: ExperimentConfig) -> float:
    """Closed-form h* for a Gaussian mode and Delta = -h^2 M / r_e^2."""
    _require_decohering(config)
    if not isinstance(config.mode, GaussianMode):
        raise TypeError("the closed-form inversion needs a Gaussian mode")
    d_eff = effective_width(config.mode.d_t, config.mode.d_x)
    r_e = config.metric.reference_radius
    return r_e * math.sqrt(d_eff * math.sqrt(math.log(2.0)) / config.metric.mass_parameter)
