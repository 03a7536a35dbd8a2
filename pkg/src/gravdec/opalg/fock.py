"""
Truncated-Fock cross-check of the coincidence rate.

The labelled modes of each beam are orthonormalized through their Gram matrix
of overlaps, the detector operators are written as matrices on the Fock space
of at most four orthonormal input modes, and the vacuum expectation is taken
numerically.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import qutip as qt

from ..errors import CutoffTooSmallError
from ..modes import ModeFunction, SpaceTimeLabel, overlap
from .operators import OperatorExpr, SourceModel, apply_source

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-12
MIN_CUTOFF = 2
MAX_AUTO_CUTOFF = 8
_RANK_TOLERANCE = 1e-12


@lru_cache(maxsize=32)
def _mode_operators(
    n_modes: int, cutoff: int
) -> Tuple[Tuple[qt.Qobj, ...], Tuple[qt.Qobj, ...], qt.Qobj, qt.Qobj]:
    """Annihilators, top-level projectors, identity and vacuum for n_modes with levels 0..cutoff."""
    dim = cutoff + 1
    eye = qt.qeye(dim)
    top = qt.basis(dim, cutoff).proj()
    annihilators = []
    projectors = []
    for j in range(n_modes):
        factors = [eye] * n_modes
        factors[j] = qt.destroy(dim)
        annihilators.append(qt.tensor(factors))
        factors[j] = top
        projectors.append(qt.tensor(factors))
    identity = qt.tensor([eye] * n_modes)
    vacuum = qt.tensor([qt.basis(dim, 0)] * n_modes)
    return tuple(annihilators), tuple(projectors), identity, vacuum


def _beam_loadings(labels: List[SpaceTimeLabel], mode: ModeFunction) -> np.ndarray:
    """Rows express each labelled mode in an orthonormal basis: L L^T = Gram."""
    n = len(labels)
    gram = np.empty((n, n))
    for i in range(n):
        for k in range(i, n):
            gram[i, k] = gram[k, i] = overlap(mode, labels[i], labels[k])
    eigvals, eigvecs = np.linalg.eigh(gram)
    keep = eigvals > _RANK_TOLERANCE * max(float(eigvals.max()), 1.0)
    return eigvecs[:, keep] * np.sqrt(eigvals[keep])


class _Basis:
    def __init__(self, product: Sequence[OperatorExpr], mode: ModeFunction) -> None:
        labels: Dict[int, List[SpaceTimeLabel]] = {1: [], 2: []}
        for factor in product:
            for _, op in factor.terms:
                if op.label not in labels[op.beam]:
                    labels[op.beam].append(op.label)
        self.index: Dict[Tuple[int, SpaceTimeLabel], Tuple[int, np.ndarray]] = {}
        self.n_modes = 0
        for beam in (1, 2):
            if not labels[beam]:
                continue
            loadings = _beam_loadings(labels[beam], mode)
            width = loadings.shape[1]
            for i, label in enumerate(labels[beam]):
                self.index[(beam, label)] = (self.n_modes, loadings[i])
            self.n_modes += width


def _operator_matrix(
    factor: OperatorExpr, basis: _Basis, annihilators: Sequence[qt.Qobj], identity: qt.Qobj
) -> qt.Qobj:
    matrix = factor.scalar * identity
    for coefficient, op in factor.terms:
        offset, row = basis.index[(op.beam, op.label)]
        for j, weight in enumerate(row):
            if weight == 0.0:
                continue
            b = annihilators[offset + j]
            matrix = matrix + coefficient * weight * (b.dag() if op.dagger else b)
    return matrix


def _evaluate(product: Sequence[OperatorExpr], mode: ModeFunction, cutoff: int) -> complex:
    basis = _Basis(product, mode)
    annihilators, projectors, identity, vacuum = _mode_operators(max(basis.n_modes, 1), cutoff)
    ket = vacuum
    for factor in reversed(product):
        if factor.has_creators:
            weight = float(ket.norm()) ** 2
            for projector in projectors:
                tail = float((projector @ ket).norm()) ** 2
                if tail > TAIL_TOLERANCE * max(weight, 1e-300):
                    raise CutoffTooSmallError(
                        f"cutoff {cutoff} leaves tail mass {tail:.3g} of {weight:.3g} at the top Fock level"
                    )
        ket = _operator_matrix(factor, basis, annihilators, identity) @ ket
    return complex(vacuum.overlap(ket))


def vacuum_expectation_fock(
    product: Sequence[OperatorExpr], mode: ModeFunction, cutoff: Optional[int] = None
) -> complex:
    """<00| F_1 ... F_n |00> evaluated on a truncated Fock space."""
    if cutoff is not None:
        if cutoff < MIN_CUTOFF:
            raise CutoffTooSmallError(f"cutoff must be at least {MIN_CUTOFF}, got {cutoff}")
        return _evaluate(product, mode, cutoff)
    for trial in range(MIN_CUTOFF, MAX_AUTO_CUTOFF + 1):
        try:
            return _evaluate(product, mode, trial)
        except CutoffTooSmallError:
            logger.debug("cutoff %d too small, increasing", trial)
    raise CutoffTooSmallError(f"no cutoff up to {MAX_AUTO_CUTOFF} satisfies the tail-mass rule")


def fock_oracle(
    source: SourceModel,
    label_1: SpaceTimeLabel,
    label_2: SpaceTimeLabel,
    mode: ModeFunction,
    cutoff: Optional[int] = None,
) -> float:
    """<n_1 n_2> from matrices on the truncated Fock space of the orthonormalized input modes."""
    m1, m2 = apply_source(source, label_1, label_2)
    value = vacuum_expectation_fock([m1.adjoint(), m1, m2.adjoint(), m2], mode, cutoff)
    return float(value.real)
