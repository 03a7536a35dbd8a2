from __future__ import annotations

import csv
import logging
import math
import os
import tempfile
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Sequence, Tuple, Union

from .. import __version__
from ..experiment import ScenarioResult
from ..runfile import RunSettings

logger = logging.getLogger(__name__)

CSV_HEADER = ["h_m", "sigma_c_m", "sigma_sd_m", "delta_m", "overlap", "C", "C_N"]
TIMESTAMP_KEY = "timestamp"


def format_number(value: float) -> str:
    """Decimal scientific notation, 12 significant digits."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    return f"{value:.11e}"


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_number(value)
    return str(value)


@dataclass
class RunManifest:
    """Parsed configuration plus provenance, written as ``# key = value`` lines."""

    settings: List[Tuple[str, Any]]
    extra: List[Tuple[str, Any]] = field(default_factory=list)
    tool_version: str = __version__
    timestamp: str = field(
        default_factory=lambda: time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    )

    def header_lines(self) -> List[str]:
        lines = [
            "# tool = gravdec",
            f"# version = {self.tool_version}",
            f"# {TIMESTAMP_KEY} = {self.timestamp}",
        ]
        for key, value in list(self.settings) + list(self.extra):
            lines.append(f"# {key} = {_format_value(value)}")
        return lines


@contextmanager
def atomic_path(path: Union[str, Path]) -> Iterator[Path]:
    """Yield a temporary sibling of ``path``; it replaces ``path`` on success and is removed on failure."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=str(path.parent))
    os.close(fd)
    tmp = Path(tmp_name)
    try:
        yield tmp
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def result_row(height: float, result: ScenarioResult) -> List[str]:
    return [
        format_number(height),
        format_number(result.sigma_c),
        format_number(result.sigma_sd),
        format_number(result.delta),
        format_number(result.overlap),
        format_number(result.coincidence),
        format_number(result.normalized),
    ]


def write_sweep_csv(
    path: Union[str, Path],
    manifest: RunManifest,
    rows: Sequence[Tuple[float, ScenarioResult]],
) -> Path:
    path = Path(path)
    with atomic_path(path) as tmp:
        with tmp.open("w", encoding="utf-8", newline="") as fh:
            for line in manifest.header_lines():
                fh.write(line + "\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for height, result in rows:
                writer.writerow(result_row(height, result))
    logger.info("wrote %d rows to %s", len(rows), path)
    return path


def read_sweep_csv(path: Union[str, Path]) -> Tuple[Dict[str, str], List[Dict[str, float]]]:
    """Return the manifest (as raw strings) and the numeric rows of a sweep CSV."""
    manifest: Dict[str, str] = {}
    body: List[str] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                manifest[key.strip()] = value.strip()
            else:
                body.append(line)
    rows = [{key: float(value) for key, value in row.items()} for row in csv.DictReader(body)]
    return manifest, rows


def settings_from_manifest(manifest: Dict[str, str]) -> RunSettings:
    """Rebuild the run settings a sweep CSV was produced with."""
    return RunSettings.from_manifest(manifest)
