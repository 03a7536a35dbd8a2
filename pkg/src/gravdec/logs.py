from __future__ import annotations

import logging
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from .config import LOG_LEVEL

_configured = False


def configure_logging(level: Optional[Union[int, str]] = None) -> None:
    """Route the ``gravdec`` logger tree to a rich handler on stderr."""
    global _configured
    root = logging.getLogger("gravdec")
    root.setLevel(level if level is not None else (LOG_LEVEL or "WARNING").upper())
    if _configured:
        return
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
        log_time_format="[%X]",
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root.addHandler(handler)
    _configured = True
