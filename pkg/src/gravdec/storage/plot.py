from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402

from ..experiment import ScenarioResult  # noqa: E402
from .results import atomic_path  # noqa: E402

logger = logging.getLogger(__name__)


def write_svg(
    path: Union[str, Path],
    rows: Sequence[Tuple[float, ScenarioResult]],
    title: Optional[str] = None,
) -> Path:
    """Line plot of C_N against the mirror height, linear axes."""
    path = Path(path)
    heights = [h for h, _ in rows]
    values = [r.normalized for _, r in rows]

    fig = Figure(figsize=(6.0, 4.0))
    ax = fig.add_subplot(1, 1, 1)
    ax.plot(heights, values, color="black", linewidth=1.5)
    ax.set_xlim(min(heights), max(heights))
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("h (m)")
    ax.set_ylabel("C_N")
    if title:
        ax.set_title(title)
    ax.grid(True, linewidth=0.3)
    fig.tight_layout()

    with matplotlib.rc_context({"svg.hashsalt": "gravdec"}):
        with atomic_path(path) as tmp:
            fig.savefig(tmp, format="svg", metadata={"Date": None})
    logger.info("wrote plot to %s", path)
    return path
