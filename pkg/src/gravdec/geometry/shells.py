"""
Shell-frame intervals along a radial light path in the Schwarzschild metric.

All lengths, times and masses are geometric meters (c = G = 1). The reference
shell at ``reference_radius`` holds the source and the detectors; mode 2 climbs
to ``reference_radius + height`` and is reflected back down.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Tuple

import numpy as np
from scipy import integrate

from ..errors import DomainError

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)
HORIZON_MARGIN = 10.0 * _EPS

# Quadrature tolerances
SIGMA_EPSREL = 1e-13
DELTA_EPSABS = 1e-20
DELTA_EPSREL = 1e-13
QUAD_LIMIT = 200


class DeltaMethod(Enum):
    """How the path-time asymmetry is evaluated."""

    EXACT = "exact"
    WEAK_FIELD = "weak"


@dataclass(frozen=True)
class MetricContext:
    """Mass parameter M and reference (SD-shell) radius r_e of a non-spinning body."""

    mass_parameter: float
    reference_radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mass_parameter) and self.mass_parameter > 0):
            raise DomainError(
                f"mass_parameter must be a positive finite length, got {self.mass_parameter!r}"
            )
        if not math.isfinite(self.reference_radius):
            raise DomainError(f"reference_radius must be finite, got {self.reference_radius!r}")
        check_outside_horizon(self, self.reference_radius)

    @property
    def schwarzschild_radius(self) -> float:
        return 2.0 * self.mass_parameter

    def to_dict(self) -> dict:
        return {"M": self.mass_parameter, "re": self.reference_radius}


@dataclass(frozen=True)
class PathGeometry:
    """Radial distance h from the reference shell to mirror m2."""

    height: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.height) and self.height >= 0):
            raise DomainError(f"height must be a non-negative finite length, got {self.height!r}")


def check_outside_horizon(ctx: MetricContext, r: float) -> None:
    """Reject radii at, inside, or within 10 machine epsilons of r = 2M."""
    rs = ctx.schwarzschild_radius
    if not r > rs * (1.0 + HORIZON_MARGIN):
        raise DomainError(f"radius {r!r} m is at or inside the Schwarzschild radius {rs!r} m")


EARTH = MetricContext(mass_parameter=4.432e-3, reference_radius=6.38e6)


def shell_intervals(ctx: MetricContext, r: float) -> Tuple[float, float]:
    """Local shell-frame factors (ds/dt, dl/dr) at radius r."""
    check_outside_horizon(ctx, r)
    lapse = math.sqrt(1.0 - ctx.schwarzschild_radius / r)
    return lapse, 1.0 / lapse


def _top_radius(ctx: MetricContext, path: PathGeometry) -> float:
    r_top = ctx.reference_radius + path.height
    check_outside_horizon(ctx, r_top)
    return r_top


# ---------------------------------------------------------------------------
# Closed forms. Increments are rewritten so that no h-sized quantity is formed
# as the difference of two r-sized antiderivative values.
# ---------------------------------------------------------------------------


def _proper_length_increment(b: float, d: float, two_m: float) -> float:
    # [sqrt(r(r-2M)) + 2M ln(sqrt(r) + sqrt(r-2M))] from b to b + d.
    # d is the exact height; the rounded top radius a only enters ratios
    if d == 0.0:
        return 0.0
    a = b + d
    ra, rb = math.sqrt(a * (a - two_m)), math.sqrt(b * (b - two_m))
    sqrt_part = d * (a + b - two_m) / (ra + rb)
    sa, sb = math.sqrt(a), math.sqrt(b)
    qa, qb = math.sqrt(a - two_m), math.sqrt(b - two_m)
    ratio_minus_one = (d / (sa + sb) + d / (qa + qb)) / (sb + qb)
    return sqrt_part + two_m * math.log1p(ratio_minus_one)


def shell_time_climb(ctx: MetricContext, path: PathGeometry) -> float:
    """Integrated shell-frame time sigma_c = int dr / sqrt(1 - 2M/r) over [r_e, r_e + h]."""
    _top_radius(ctx, path)
    return _proper_length_increment(ctx.reference_radius, path.height, ctx.schwarzschild_radius)


def sd_shell_time_climb(ctx: MetricContext, path: PathGeometry) -> float:
    """The climb interval as measured by SD-shell clocks.

    sqrt(1 - 2M/r_e) * int dr / (1 - 2M/r), whose antiderivative is
    r + 2M ln(r - 2M).
    """
    _top_radius(ctx, path)
    two_m, r_e, h = ctx.schwarzschild_radius, ctx.reference_radius, path.height
    coordinate = h + two_m * math.log1p(h / (r_e - two_m))
    return math.sqrt(1.0 - two_m / r_e) * coordinate


def mirror1_distance(ctx: MetricContext, path: PathGeometry) -> float:
    """One-way SD-shell path length of mode 1, sigma_f.

    Condition (i) equates the two round trips as seen from the SD-shell, and
    light moves at unit speed in the local shell frame.
    """
    return sd_shell_time_climb(ctx, path)


# ---------------------------------------------------------------------------
# Quadrature routes
# ---------------------------------------------------------------------------


def _quad(fn: Callable[[float], float], upper: float, *, epsabs: float, epsrel: float) -> float:
    if upper == 0.0:
        return 0.0
    value, err = integrate.quad(fn, 0.0, upper, epsabs=epsabs, epsrel=epsrel, limit=QUAD_LIMIT)
    logger.debug("quad over [0, %.6g]: value=%.17g abserr=%.3g", upper, value, err)
    return float(value)


def shell_time_climb_quadrature(ctx: MetricContext, path: PathGeometry) -> float:
    _top_radius(ctx, path)
    two_m, r_e = ctx.schwarzschild_radius, ctx.reference_radius

    def integrand(u: float) -> float:
        return 1.0 / math.sqrt(1.0 - two_m / (r_e + u))

    return _quad(integrand, path.height, epsabs=0.0, epsrel=SIGMA_EPSREL)


def sd_shell_time_climb_quadrature(ctx: MetricContext, path: PathGeometry) -> float:
    _top_radius(ctx, path)
    two_m, r_e = ctx.schwarzschild_radius, ctx.reference_radius

    def integrand(u: float) -> float:
        return 1.0 / (1.0 - two_m / (r_e + u))

    return math.sqrt(1.0 - two_m / r_e) * _quad(
        integrand, path.height, epsabs=0.0, epsrel=SIGMA_EPSREL
    )


# ---------------------------------------------------------------------------
# Path-time asymmetry
# ---------------------------------------------------------------------------


def _difference_integrand(two_m: float, r_e: float) -> Callable[[float], float]:
    # sqrt(1-y)/(1-x) - 1/sqrt(1-x) with x = 2M/r, y = 2M/r_e, rearranged to
    # (x - y) / ((1 - x)(sqrt(1-y) + sqrt(1-x))) and x - y = -2M u / (r r_e)
    root_y = math.sqrt(1.0 - two_m / r_e)

    def integrand(u: float) -> float:
        r = r_e + u
        x = two_m / r
        x_minus_y = -two_m * u / (r * r_e)
        return x_minus_y / ((1.0 - x) * (root_y + math.sqrt(1.0 - x)))

    return integrand


def delta_exact(ctx: MetricContext, path: PathGeometry) -> float:
    """Delta = 2 (sigma_f - sigma_c), integrated from the difference integrand directly."""
    _top_radius(ctx, path)
    integrand = _difference_integrand(ctx.schwarzschild_radius, ctx.reference_radius)
    return 2.0 * _quad(integrand, path.height, epsabs=DELTA_EPSABS, epsrel=DELTA_EPSREL)


def delta_weak_field(ctx: MetricContext, path: PathGeometry) -> float:
    """Weak-field, short-path form -h^2 M / r_e^2."""
    return -(path.height**2 * ctx.mass_parameter) / ctx.reference_radius**2


def delta_series(ctx: MetricContext, path: PathGeometry) -> float:
    """First order in M, any h: 2M (ln(1 + h/r_e) - h/r_e)."""
    _top_radius(ctx, path)
    x = path.height / ctx.reference_radius
    return 2.0 * ctx.mass_parameter * (math.log1p(x) - x)


def delta(ctx: MetricContext, path: PathGeometry, method: DeltaMethod = DeltaMethod.EXACT) -> float:
    if method is DeltaMethod.WEAK_FIELD:
        return delta_weak_field(ctx, path)
    return delta_exact(ctx, path)


def redshift_factor(ctx: MetricContext, r_emit: float, r_final: float) -> float:
    """g = sqrt(1 - 2M/r_emit) / sqrt(1 - 2M/r_final)."""
    check_outside_horizon(ctx, r_emit)
    check_outside_horizon(ctx, r_final)
    if r_emit == r_final:
        return 1.0
    two_m = ctx.schwarzschild_radius
    return math.sqrt(1.0 - two_m / r_emit) / math.sqrt(1.0 - two_m / r_final)
