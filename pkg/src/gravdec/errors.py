"""Exception hierarchy shared by the simulator packages and the CLI."""

from __future__ import annotations

from typing import Optional


class GravdecError(Exception):
    """Base class for every error raised by gravdec."""


class DomainError(GravdecError, ValueError):
    """Geometry evaluated at or inside the Schwarzschild radius, or invalid lengths."""


class InvalidWidthError(GravdecError, ValueError):
    """A mode function was given a non-positive width or a malformed grid."""


class IntegrationError(GravdecError):
    """Numerical integration could not be carried out on the given support."""


class SourceError(GravdecError, ValueError):
    """Source parameters out of range, or an operation given the wrong source kind."""


class CombinatorialLimitError(GravdecError):
    """An operator monomial is too long for the contraction engine."""


class CutoffTooSmallError(GravdecError):
    """The truncated Fock space lost amplitude at its top level."""


class NoCrossingError(GravdecError):
    """The coincidence curve never falls to one half inside the search bracket."""


class ConfigError(GravdecError, ValueError):
    """A run file or flag combination could not be parsed or validated."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
