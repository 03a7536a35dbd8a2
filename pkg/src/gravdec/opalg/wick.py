"""
Vacuum expectation values of products of affine operator expressions.

Every annihilator is moved to the right through the remaining factors; each
pass past a creator of the same beam leaves the c-number commutator
[a_b(xi), a_b^dagger(xi')] = K(xi, xi') from ``modes.overlap``.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import CombinatorialLimitError, SourceError
from ..modes import ModeFunction, SpaceTimeLabel, overlap
from .operators import LadderOp, OperatorExpr, Pdc, SourceModel, apply_source

MAX_MONOMIAL_LENGTH = 16


class ContractionKernel:
    """Memoized pair commutator [left, right] for ladder operators."""

    def __init__(self, mode: ModeFunction) -> None:
        self.mode = mode
        self._cache: Dict[Tuple[SpaceTimeLabel, SpaceTimeLabel], float] = {}

    def __call__(self, left: LadderOp, right: LadderOp) -> float:
        if left.dagger or not right.dagger or left.beam != right.beam:
            return 0.0
        key = (left.label, right.label)
        value = self._cache.get(key)
        if value is None:
            value = overlap(self.mode, left.label, right.label)
            self._cache[key] = value
            self._cache[(right.label, left.label)] = value
        return value


def _vacuum_monomial(ops: Tuple[LadderOp, ...], kernel: ContractionKernel) -> complex:
    if not ops:
        return 1.0
    first = ops[0]
    if first.dagger or not ops[-1].dagger:
        # <0| a^dagger = 0 and a |0> = 0
        return 0.0
    total = 0.0
    for j in range(1, len(ops)):
        k = kernel(first, ops[j])
        if k != 0.0:
            total += k * _vacuum_monomial(ops[1:j] + ops[j + 1 :], kernel)
    return total


def vacuum_expectation(product: Sequence[OperatorExpr], mode: ModeFunction) -> complex:
    """<00| F_1 F_2 ... F_n |00> for affine factors F_i, exact in every coefficient."""
    length = sum(1 for factor in product if factor.terms)
    if length > MAX_MONOMIAL_LENGTH:
        raise CombinatorialLimitError(
            f"product expands to monomials of {length} ladder operators (limit {MAX_MONOMIAL_LENGTH})"
        )
    kernel = ContractionKernel(mode)
    choices: List[List[Tuple[complex, Optional[LadderOp]]]] = []
    for factor in product:
        options: List[Tuple[complex, Optional[LadderOp]]] = []
        if factor.scalar != 0:
            options.append((factor.scalar, None))
        options.extend((c, op) for c, op in factor.terms if c != 0)
        if not options:
            return 0j
        choices.append(options)

    total = 0j
    for pick in itertools.product(*choices):
        coefficient = 1.0 + 0j
        ops: List[LadderOp] = []
        for c, op in pick:
            coefficient *= c
            if op is not None:
                ops.append(op)
        total += coefficient * _vacuum_monomial(tuple(ops), kernel)
    return total


def coincidence(
    source: SourceModel, label_1: SpaceTimeLabel, label_2: SpaceTimeLabel, mode: ModeFunction
) -> float:
    """C = <00| a_m1^dagger a_m1 a_m2^dagger a_m2 |00>."""
    m1, m2 = apply_source(source, label_1, label_2)
    value = vacuum_expectation([m1.adjoint(), m1, m2.adjoint(), m2], mode)
    return float(value.real)


def singles(
    source: SourceModel, label_1: SpaceTimeLabel, label_2: SpaceTimeLabel, mode: ModeFunction
) -> Tuple[float, float]:
    """Mean photon numbers <n_1>, <n_2> at the two detectors."""
    m1, m2 = apply_source(source, label_1, label_2)
    n1 = vacuum_expectation([m1.adjoint(), m1], mode)
    n2 = vacuum_expectation([m2.adjoint(), m2], mode)
    return float(n1.real), float(n2.real)


def coincidence_second_order(
    source: SourceModel, label_1: SpaceTimeLabel, label_2: SpaceTimeLabel, mode: ModeFunction
) -> float:
    """Leading-order result |chi [a_1(s1, l1), a_1^dagger(s2, l2)]|^2 = chi^2 K^2."""
    if not isinstance(source, Pdc):
        raise SourceError("the second-order coincidence is defined for a down-conversion source only")
    k = overlap(mode, label_1, label_2)
    return source.chi**2 * k * k
