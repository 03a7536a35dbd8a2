"""
Commutator [a(s1, l1), a^dagger(s2, l2)] between mode operators at two labels.

For real envelopes this is the overlap integral
K = int int G(t' - s1, x' - l1) G(t' - s2, x' - l2) dt' dx'.
"""

from __future__ import annotations

import logging
import math
from typing import Tuple

import numpy as np
from scipy import integrate
from scipy.interpolate import RectBivariateSpline

from ..errors import IntegrationError
from .mode_functions import (
    COVERAGE_WIDTHS,
    GaussianMode,
    ModeFunction,
    SpaceTimeLabel,
    TabulatedMode,
)

logger = logging.getLogger(__name__)

UNDERFLOW = 1e-300
# Integration window half-width, in units of the Gaussian widths
_WINDOW = 8.0


def _clamp(value: float) -> float:
    if value < UNDERFLOW:
        return 0.0
    return min(value, 1.0)


def _separations(label_a: SpaceTimeLabel, label_b: SpaceTimeLabel) -> Tuple[float, float]:
    return label_a.s - label_b.s, label_a.l - label_b.l


def overlap(mode: ModeFunction, label_a: SpaceTimeLabel, label_b: SpaceTimeLabel) -> float:
    """K(label_a, label_b), closed form for Gaussians, quadrature otherwise."""
    if isinstance(mode, GaussianMode):
        ds, dl = _separations(label_a, label_b)
        # ratios before squaring
        a, b = ds / mode.d_t, dl / mode.d_x
        exponent = -0.5 * (a * a + b * b)
        return _clamp(math.exp(exponent))
    return overlap_numeric(mode, label_a, label_b)


def overlap_numeric(mode: ModeFunction, label_a: SpaceTimeLabel, label_b: SpaceTimeLabel) -> float:
    """K(label_a, label_b) by 2-D numerical integration."""
    if isinstance(mode, GaussianMode):
        return _clamp(_gaussian_quadrature(mode, *_separations(label_a, label_b)))
    if isinstance(mode, TabulatedMode):
        return _clamp(_tabulated_overlap(mode, *_separations(label_a, label_b)))
    raise TypeError(f"unsupported mode function {type(mode).__name__}")


def _gaussian_quadrature(mode: GaussianMode, ds: float, dl: float) -> float:
    # u = (t' - s1)/d_t, v = (x' - l1)/d_x; the product peaks at u = -a/2, v = -b/2
    a = ds / mode.d_t
    b = dl / mode.d_x

    def integrand(v: float, u: float) -> float:
        return math.exp(-u * u - (u + a) ** 2 - v * v - (v + b) ** 2)

    value, err = integrate.dblquad(
        integrand,
        -a / 2.0 - _WINDOW,
        -a / 2.0 + _WINDOW,
        -b / 2.0 - _WINDOW,
        -b / 2.0 + _WINDOW,
        epsabs=1e-15,
        epsrel=1e-12,
    )
    logger.debug("gaussian overlap quadrature a=%.6g b=%.6g abserr=%.3g", a, b, err)
    return 2.0 / math.pi * value


def check_coverage(mode: TabulatedMode) -> None:
    """The grid must reach COVERAGE_WIDTHS RMS widths beyond the envelope centre on each axis."""
    (t0, x0), (w_t, w_x) = mode.centroid, mode.rms_widths
    half_t, half_x = mode.half_extents
    reach_t = half_t - abs(t0)
    reach_x = half_x - abs(x0)
    if reach_t < COVERAGE_WIDTHS * w_t or reach_x < COVERAGE_WIDTHS * w_x:
        raise IntegrationError(
            "tabulated grid does not cover the mode support: "
            f"reach ({reach_t:.3g}, {reach_x:.3g}) < {COVERAGE_WIDTHS:g} x RMS widths "
            f"({w_t:.3g}, {w_x:.3g})"
        )


def _shifted_product_integral(
    mode: TabulatedMode, spline: RectBivariateSpline, ds: float, dl: float
) -> float:
    t = mode.t_axis[:, None] + ds
    x = mode.x_axis[None, :] + dl
    t_grid, x_grid = np.broadcast_arrays(t, x)
    inside = (
        (t_grid >= mode.t_axis[0])
        & (t_grid <= mode.t_axis[-1])
        & (x_grid >= mode.x_axis[0])
        & (x_grid <= mode.x_axis[-1])
    )
    shifted = np.zeros(t_grid.shape)
    if np.any(inside):
        shifted[inside] = spline.ev(t_grid[inside], x_grid[inside])
    # cubic ringing can dip below zero near steep edges
    np.clip(shifted, 0.0, None, out=shifted)
    return mode.integrate(mode.amplitudes * shifted)


def _tabulated_overlap(mode: TabulatedMode, ds: float, dl: float) -> float:
    check_coverage(mode)
    if ds == 0.0 and dl == 0.0:
        return mode.integrate(mode.amplitudes**2)
    spline = RectBivariateSpline(mode.t_axis, mode.x_axis, mode.amplitudes, kx=3, ky=3)
    # int G(u) G(u + d) and int G(u) G(u - d) are equal analytically; average for exact symmetry
    forward = _shifted_product_integral(mode, spline, ds, dl)
    backward = _shifted_product_integral(mode, spline, -ds, -dl)
    return 0.5 * (forward + backward)


def norm_squared(mode: ModeFunction) -> float:
    """Numerical integral of G^2 over the plane."""
    if isinstance(mode, TabulatedMode):
        return mode.integrate(mode.amplitudes**2)

    def integrand(v: float, u: float) -> float:
        return math.exp(-2.0 * u * u - 2.0 * v * v)

    value, _ = integrate.dblquad(
        integrand, -_WINDOW, _WINDOW, -_WINDOW, _WINDOW, epsabs=1e-15, epsrel=1e-13
    )
    return 2.0 / math.pi * value
