"""
Operator algebra for the detector modes: affine expressions in labelled
ladder operators, exact vacuum expectations, and a truncated-Fock oracle.
"""

from .fock import fock_oracle, vacuum_expectation_fock
from .operators import (
    CHI_HARD_CAP,
    CHI_WARNING_THRESHOLD,
    Coherent,
    LadderOp,
    OperatorExpr,
    Pdc,
    SourceModel,
    apply_source,
)
from .wick import (
    MAX_MONOMIAL_LENGTH,
    ContractionKernel,
    coincidence,
    coincidence_second_order,
    singles,
    vacuum_expectation,
)

__all__ = [
    "CHI_HARD_CAP",
    "CHI_WARNING_THRESHOLD",
    "Coherent",
    "ContractionKernel",
    "LadderOp",
    "MAX_MONOMIAL_LENGTH",
    "OperatorExpr",
    "Pdc",
    "SourceModel",
    "apply_source",
    "coincidence",
    "coincidence_second_order",
    "fock_oracle",
    "singles",
    "vacuum_expectation",
    "vacuum_expectation_fock",
]
