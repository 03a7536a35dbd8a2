"""
Mode functions and the overlap commutator between labelled mode operators.
"""

from .mode_functions import (
    GaussianMode,
    ModeFunction,
    SpaceTimeLabel,
    TabulatedMode,
    effective_width,
    gaussian_mode,
    load_tabulated_mode,
    sample_gaussian_grid,
    save_tabulated_mode,
    tabulated_mode,
)
from .overlap import check_coverage, norm_squared, overlap, overlap_numeric

__all__ = [
    "GaussianMode",
    "ModeFunction",
    "SpaceTimeLabel",
    "TabulatedMode",
    "check_coverage",
    "effective_width",
    "gaussian_mode",
    "load_tabulated_mode",
    "norm_squared",
    "overlap",
    "overlap_numeric",
    "sample_gaussian_grid",
    "save_tabulated_mode",
    "tabulated_mode",
]
