"""
Result files: sweep CSVs with a manifest header, and the static SVG curve.
"""

from .plot import write_svg
from .results import (
    CSV_HEADER,
    RunManifest,
    read_sweep_csv,
    settings_from_manifest,
    write_sweep_csv,
)

__all__ = [
    "CSV_HEADER",
    "RunManifest",
    "read_sweep_csv",
    "settings_from_manifest",
    "write_svg",
    "write_sweep_csv",
]
