"""
Normalized spatio-temporal mode envelopes G(t, x).

Envelopes are real and non-negative; carrier phases are not represented.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from scipy import integrate

from ..errors import ConfigError, InvalidWidthError

NORMALIZATION_TOLERANCE = 1e-9
# Half-extent of a tabulated grid, in RMS widths, needed to hold the envelope
COVERAGE_WIDTHS = 6.0

_HEADER_RE = re.compile(
    r"^#\s*dt\s+(?P<dt>\S+)\s+dx\s+(?P<dx>\S+)\s*$", re.IGNORECASE
)


@dataclass(frozen=True)
class SpaceTimeLabel:
    """The (s, l) pair carried by an evolved mode operator."""

    s: float
    l: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.s) and math.isfinite(self.l)):
            raise ValueError(f"space-time label must be finite, got ({self.s!r}, {self.l!r})")

    @classmethod
    def joint(cls, value: float) -> "SpaceTimeLabel":
        """Label of free optical propagation, where s and l advance together."""
        return cls(value, value)

    def shifted(self, ds: float, dl: float) -> "SpaceTimeLabel":
        return SpaceTimeLabel(self.s + ds, self.l + dl)


@dataclass(frozen=True)
class GaussianMode:
    """G = sqrt(2 / (pi d_t d_x)) exp(-t^2/d_t^2 - x^2/d_x^2)."""

    d_t: float
    d_x: float

    def __post_init__(self) -> None:
        for name, width in (("d_t", self.d_t), ("d_x", self.d_x)):
            if not (math.isfinite(width) and width > 0):
                raise InvalidWidthError(f"{name} must be a positive finite length, got {width!r}")

    @property
    def peak_amplitude(self) -> float:
        return math.sqrt(2.0 / math.pi) / (math.sqrt(self.d_t) * math.sqrt(self.d_x))

    @property
    def rms_widths(self) -> Tuple[float, float]:
        # widths of the density G^2
        return self.d_t / 2.0, self.d_x / 2.0

    def amplitude(self, t, x):
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        return self.peak_amplitude * np.exp(-((t / self.d_t) ** 2) - (x / self.d_x) ** 2)


@dataclass(frozen=True, eq=False)
class TabulatedMode:
    """Sampled envelope on a uniform grid centred on the origin, t-major."""

    amplitudes: np.ndarray
    spacing_t: float
    spacing_x: float
    t_axis: np.ndarray = field(init=False, repr=False)
    x_axis: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for name, spacing in (("dt", self.spacing_t), ("dx", self.spacing_x)):
            if not (math.isfinite(spacing) and spacing > 0):
                raise InvalidWidthError(f"grid spacing {name} must be positive, got {spacing!r}")
        values = np.array(self.amplitudes, dtype=float, copy=True)
        if values.ndim != 2 or min(values.shape) < 3:
            raise InvalidWidthError(f"amplitude grid must be 2-D and at least 3x3, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidWidthError("amplitude grid contains non-finite samples")
        if np.any(values < 0):
            raise InvalidWidthError("amplitude grid must be real and non-negative")
        values.setflags(write=False)
        n_t, n_x = values.shape
        t_axis = (np.arange(n_t) - (n_t - 1) / 2.0) * self.spacing_t
        x_axis = (np.arange(n_x) - (n_x - 1) / 2.0) * self.spacing_x
        t_axis.setflags(write=False)
        x_axis.setflags(write=False)
        object.__setattr__(self, "amplitudes", values)
        object.__setattr__(self, "t_axis", t_axis)
        object.__setattr__(self, "x_axis", x_axis)
        norm = self.integrate(values**2)
        if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
            raise InvalidWidthError(
                f"tabulated mode is not normalized (integral of G^2 = {norm!r}); use tabulated_mode()"
            )

    def integrate(self, samples: np.ndarray) -> float:
        """2-D trapezoidal integral of samples laid out on this grid."""
        inner = integrate.trapezoid(samples, dx=self.spacing_x, axis=1)
        return float(integrate.trapezoid(inner, dx=self.spacing_t))

    @property
    def centroid(self) -> Tuple[float, float]:
        density = self.amplitudes**2
        return (
            self.integrate(density * self.t_axis[:, None]),
            self.integrate(density * self.x_axis[None, :]),
        )

    @property
    def rms_widths(self) -> Tuple[float, float]:
        density = self.amplitudes**2
        t0, x0 = self.centroid
        var_t = self.integrate(density * (self.t_axis[:, None] - t0) ** 2)
        var_x = self.integrate(density * (self.x_axis[None, :] - x0) ** 2)
        return math.sqrt(max(var_t, 0.0)), math.sqrt(max(var_x, 0.0))

    @property
    def half_extents(self) -> Tuple[float, float]:
        return float(self.t_axis[-1]), float(self.x_axis[-1])


ModeFunction = Union[GaussianMode, TabulatedMode]


def gaussian_mode(d_t: float, d_x: float) -> GaussianMode:
    return GaussianMode(d_t=float(d_t), d_x=float(d_x))


def tabulated_mode(amplitudes, spacing_t: float, spacing_x: float) -> TabulatedMode:
    """Build a tabulated mode, rescaling the samples so that the integral of G^2 is one."""
    values = np.asarray(amplitudes, dtype=float)
    if values.ndim != 2:
        raise InvalidWidthError(f"amplitude grid must be 2-D, got shape {values.shape}")
    inner = integrate.trapezoid(values**2, dx=spacing_x, axis=1)
    norm = float(integrate.trapezoid(inner, dx=spacing_t))
    if not (math.isfinite(norm) and norm > 0):
        raise InvalidWidthError("amplitude grid has no weight to normalize")
    return TabulatedMode(values / math.sqrt(norm), float(spacing_t), float(spacing_x))


def sample_gaussian_grid(
    mode: GaussianMode, n_t: int = 121, n_x: int = 121, extent: float = 4.0
) -> TabulatedMode:
    """Tabulate a Gaussian mode on a grid reaching ``extent`` widths either side."""
    t_axis = np.linspace(-extent * mode.d_t, extent * mode.d_t, n_t)
    x_axis = np.linspace(-extent * mode.d_x, extent * mode.d_x, n_x)
    samples = mode.amplitude(t_axis[:, None], x_axis[None, :])
    return tabulated_mode(samples, t_axis[1] - t_axis[0], x_axis[1] - x_axis[0])


def effective_width(d_t: float, d_x: float) -> float:
    """Width of a joint (s = l) shift: 1/d_eff^2 = 1/d_t^2 + 1/d_x^2."""
    narrow, wide = sorted((d_t, d_x))
    return narrow / math.hypot(1.0, narrow / wide)


def load_tabulated_mode(path: Union[str, Path]) -> TabulatedMode:
    """Read a grid file: a ``# dt <spacing> dx <spacing>`` header, then t-major amplitude rows."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().strip()
    match = _HEADER_RE.match(header)
    if not match:
        raise ConfigError(f"{path}: expected '# dt <spacing> dx <spacing>' header", line=1)
    try:
        spacing_t = float(match.group("dt"))
        spacing_x = float(match.group("dx"))
    except ValueError as e:
        raise ConfigError(f"{path}: bad grid spacing ({e})", line=1) from e
    try:
        samples = np.loadtxt(path, comments="#", ndmin=2)
    except ValueError as e:
        raise ConfigError(f"{path}: malformed amplitude rows ({e})") from e
    return tabulated_mode(samples, spacing_t, spacing_x)


def save_tabulated_mode(path: Union[str, Path], mode: TabulatedMode) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# dt {mode.spacing_t!r} dx {mode.spacing_x!r}\n")
        np.savetxt(fh, mode.amplitudes, fmt="%.17g")
