"""
Labelled ladder operators, affine operator expressions and the two source models.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

from ..errors import SourceError
from ..modes import SpaceTimeLabel

logger = logging.getLogger(__name__)

CHI_WARNING_THRESHOLD = 0.1
CHI_HARD_CAP = 0.3


@dataclass(frozen=True)
class LadderOp:
    """a_beam(s, l), or its adjoint when ``dagger`` is set."""

    beam: int
    label: SpaceTimeLabel
    dagger: bool = False

    def __post_init__(self) -> None:
        if self.beam not in (1, 2):
            raise ValueError(f"beam must be 1 or 2, got {self.beam!r}")

    def adjoint(self) -> "LadderOp":
        return LadderOp(self.beam, self.label, not self.dagger)

    def __str__(self) -> str:
        mark = "†" if self.dagger else ""
        return f"a{self.beam}{mark}({self.label.s:.6g},{self.label.l:.6g})"


Term = Tuple[complex, LadderOp]


@dataclass(frozen=True)
class OperatorExpr:
    """scalar + sum(coefficient * ladder operator); never a product of ladder operators."""

    scalar: complex = 0j
    terms: Tuple[Term, ...] = ()

    @classmethod
    def of(cls, op: LadderOp, coefficient: complex = 1.0) -> "OperatorExpr":
        if coefficient == 0:
            return cls()
        return cls(0j, ((complex(coefficient), op),))

    def __add__(self, other: Union["OperatorExpr", complex, float]) -> "OperatorExpr":
        if isinstance(other, OperatorExpr):
            return OperatorExpr(self.scalar + other.scalar, self.terms + other.terms)
        return OperatorExpr(self.scalar + complex(other), self.terms)

    __radd__ = __add__

    def adjoint(self) -> "OperatorExpr":
        return OperatorExpr(
            self.scalar.conjugate(),
            tuple((c.conjugate(), op.adjoint()) for c, op in self.terms),
        )

    @property
    def has_creators(self) -> bool:
        return any(op.dagger for c, op in self.terms if c != 0)

    def __str__(self) -> str:
        parts = [f"({c:.6g})*{op}" for c, op in self.terms]
        if self.scalar != 0 or not parts:
            parts.append(f"({self.scalar:.6g})")
        return " + ".join(parts)


@dataclass(frozen=True)
class Coherent:
    """Classically correlated pulses with displacement amplitude alpha in both modes."""

    alpha: complex = 1.0

    def __post_init__(self) -> None:
        alpha = complex(self.alpha)
        if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
            raise SourceError(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def kind(self) -> str:
        return "coherent"


@dataclass(frozen=True)
class Pdc:
    """Parametric down-conversion with pump-proportional gain chi << 1."""

    chi: float = 0.01

    def __post_init__(self) -> None:
        chi = float(self.chi)
        if not (math.isfinite(chi) and chi >= 0):
            raise SourceError(f"chi must be a non-negative number, got {self.chi!r}")
        if chi > CHI_HARD_CAP:
            raise SourceError(f"chi = {chi:g} exceeds the hard cap {CHI_HARD_CAP:g} (the model needs chi << 1)")
        if chi > CHI_WARNING_THRESHOLD:
            logger.warning(
                "chi = %g is above %g; higher orders in chi are no longer small",
                chi,
                CHI_WARNING_THRESHOLD,
            )
        object.__setattr__(self, "chi", chi)

    @property
    def kind(self) -> str:
        return "pdc"


SourceModel = Union[Coherent, Pdc]


def apply_source(
    source: SourceModel, label_1: SpaceTimeLabel, label_2: SpaceTimeLabel
) -> Tuple[OperatorExpr, OperatorExpr]:
    """Detector operators (a_m1, a_m2) in terms of the input operators at the evolved labels."""
    a1 = OperatorExpr.of(LadderOp(1, label_1))
    a2 = OperatorExpr.of(LadderOp(2, label_2))
    if isinstance(source, Coherent):
        return a1 + source.alpha, a2 + source.alpha
    if isinstance(source, Pdc):
        # each cross term carries the label of its partner detector operator
        cross_1 = OperatorExpr.of(LadderOp(2, label_1, dagger=True), source.chi)
        cross_2 = OperatorExpr.of(LadderOp(1, label_2, dagger=True), source.chi)
        return a1 + cross_1, a2 + cross_2
    raise SourceError(f"unsupported source {type(source).__name__}")
