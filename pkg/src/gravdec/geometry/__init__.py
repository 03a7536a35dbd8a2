"""
Schwarzschild shell-frame geometry of the two photon paths.
"""

from .shells import (
    EARTH,
    DeltaMethod,
    MetricContext,
    PathGeometry,
    check_outside_horizon,
    delta,
    delta_exact,
    delta_series,
    delta_weak_field,
    mirror1_distance,
    redshift_factor,
    sd_shell_time_climb,
    sd_shell_time_climb_quadrature,
    shell_intervals,
    shell_time_climb,
    shell_time_climb_quadrature,
)

__all__ = [
    "EARTH",
    "DeltaMethod",
    "MetricContext",
    "PathGeometry",
    "check_outside_horizon",
    "delta",
    "delta_exact",
    "delta_series",
    "delta_weak_field",
    "mirror1_distance",
    "redshift_factor",
    "sd_shell_time_climb",
    "sd_shell_time_climb_quadrature",
    "shell_intervals",
    "shell_time_climb",
    "shell_time_climb_quadrature",
]
