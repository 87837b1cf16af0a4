# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Separability of periodic potentials, decided and constructed from Fourier data.

A potential is ``(s, t)``-separable exactly when ``V^(l) = 0`` for every mode
with ``l_s != 0`` and ``l_t != 0``. Block and shared-block patterns reduce to
a conjunction of such pair conditions.

Decompositions are canonical. For a pair, ``V_t`` takes the modes with
``l_s = 0, l_t != 0`` and ``V_s`` takes every mode with ``l_t = 0``. For
``m`` summand blocks (``blocks`` patterns have an empty shared block),
summand ``j`` takes the modes vanishing on every other summand block, and the
first summand is corrected by ``-(m - 1)`` times the modes vanishing on all
summand blocks, which every summand would otherwise count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from floquet_iso_core.config import DEFAULT_CONFIG
from floquet_iso_core.exceptions import NotSeparable, SupportMismatch
from floquet_iso_core.lattice import PeriodLattice
from floquet_iso_core.models import Pattern, PatternKind, SeparabilityReport, Verdict
from floquet_iso_core.potential import FourierTable, Potential, dft, embed, idft, restrict

logger = logging.getLogger(__name__)


def forbidden_modes(lattice: PeriodLattice, pattern: Pattern) -> Tuple[np.ndarray, List[Tuple[int, int]]]:
    """Mask of modes that must vanish, plus the pair each mode first violates (``(0, 0)`` if none)."""
    pattern.validate_for(lattice)
    nonzero = lattice.multi_indices != 0
    mask = np.zeros(lattice.Q, dtype=bool)
    owner = [(0, 0)] * lattice.Q
    for s, t in pattern.required_pairs():
        hits = nonzero[:, s - 1] & nonzero[:, t - 1] & ~mask
        for idx in np.flatnonzero(hits):
            owner[idx] = (s, t)
        mask |= hits
    return mask, owner


def check(
    F: FourierTable,
    pattern: Pattern,
    tol: float = DEFAULT_CONFIG.separability_tol,
    scale: Optional[float] = None,
) -> SeparabilityReport:
    """Separability verdict with the worst offending coefficient.

    Coefficients are judged against ``tol * scale``; ``scale`` defaults to
    the largest coefficient of ``F`` itself.
    """
    mask, owner = forbidden_modes(F.lattice, pattern)
    scale = F.norm_inf() if scale is None else float(scale)
    magnitudes = np.where(mask, np.abs(F.coeffs), -1.0)
    worst_idx = int(np.argmax(magnitudes)) if mask.any() else None
    worst = float(magnitudes[worst_idx]) if worst_idx is not None else 0.0
    passed = worst <= tol * scale
    return SeparabilityReport(
        verdict=Verdict.PASS if passed else Verdict.FAIL,
        pattern=pattern.to_text(),
        worst_coefficient=worst,
        worst_index=list(F.lattice.multi_index_of(worst_idx)) if worst_idx is not None else None,
        worst_pair=list(owner[worst_idx]) if worst_idx is not None else None,
        scale=scale,
        tol=tol,
    )


@dataclass(frozen=True, eq=False)
class Component:
    """One summand: its 0-based coordinate support and its values on the sub-lattice."""

    support: Tuple[int, ...]
    lattice: PeriodLattice
    values: np.ndarray

    def potential(self) -> Potential:
        return Potential(self.lattice, self.values)


@dataclass(frozen=True, eq=False)
class Decomposition:
    pattern: Pattern
    lattice: PeriodLattice
    components: Tuple[Component, ...]

    def reconstruct(self) -> np.ndarray:
        total = np.zeros(self.lattice.Q, dtype=np.complex128)
        for component in self.components:
            total += embed(component.values, component.support, self.lattice)
        return total

    def to_json_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_text(),
            "periods": list(self.lattice.q),
            "components": [
                {
                    "support": [axis + 1 for axis in component.support],
                    "periods": list(component.lattice.q),
                    "values": [[float(v.real), float(v.imag)] for v in component.values],
                }
                for component in self.components
            ],
        }


def _zero_on(lattice: PeriodLattice, axes) -> np.ndarray:
    return np.all(lattice.multi_indices[:, list(axes)] == 0, axis=1)


def _component(lattice: PeriodLattice, F: FourierTable, mask: np.ndarray, support) -> np.ndarray:
    return restrict(idft(F.masked(mask)).values, support, lattice)


def decompose(V: Potential, pattern: Pattern, tol: float = DEFAULT_CONFIG.separability_tol) -> Decomposition:
    """Split ``V`` into the canonical components of ``pattern``.

    Raises:
        NotSeparable: If ``V`` fails :func:`check` for ``pattern``.
    """
    lattice = V.lattice
    F = dft(V)
    report = check(F, pattern, tol)
    if not report.passed:
        raise NotSeparable(
            f"Potential is not {pattern.to_text()}-separable: |V^{tuple(report.worst_index)}| = "
            f"{report.worst_coefficient:.3e} exceeds {tol:g} x {report.scale:.3e}."
        )
    supports = pattern.supports(lattice.d)

    if pattern.kind == PatternKind.PAIR:
        s, t = pattern.s - 1, pattern.t - 1
        l = lattice.multi_indices
        parts = [
            _component(lattice, F, l[:, t] == 0, supports[0]),
            _component(lattice, F, (l[:, s] == 0) & (l[:, t] != 0), supports[1]),
        ]
    else:
        summands = pattern.partition().blocks[: len(pattern.sizes)]
        m = len(summands)
        parts = []
        for j, support in enumerate(supports):
            others = [axis for i, block in enumerate(summands) if i != j for axis in block]
            parts.append(_component(lattice, F, _zero_on(lattice, others), support))
        if m > 1:
            shared_mass = _component(lattice, F, _zero_on(lattice, [a for b in summands for a in b]), supports[0])
            parts[0] = parts[0] - (m - 1) * shared_mass

    components = tuple(
        Component(support=tuple(support), lattice=lattice.restrict(support), values=values)
        for support, values in zip(supports, parts)
    )
    logger.debug(f"Decomposed potential on {list(lattice.q)} into {len(components)} {pattern.to_text()} components")
    return Decomposition(pattern=pattern, lattice=lattice, components=components)


@dataclass(frozen=True)
class DecompositionCheck:
    passed: bool
    max_error: float


def verify_decomposition(
    V: Potential, decomposition: Decomposition, tol: float = DEFAULT_CONFIG.separability_tol
) -> DecompositionCheck:
    """Pointwise reconstruction check, relative to ``1 + max |V|``."""
    lattice = V.lattice
    if decomposition.lattice != lattice:
        raise SupportMismatch(
            f"Decomposition lives on {list(decomposition.lattice.q)}, potential on {list(lattice.q)}."
        )
    for component in decomposition.components:
        if any(not 0 <= axis < lattice.d for axis in component.support):
            raise SupportMismatch(f"Component support {component.support} is outside 0..{lattice.d - 1}.")
        expected = lattice.restrict(component.support)
        if np.asarray(component.values).reshape(-1).shape[0] != expected.Q:
            raise SupportMismatch(
                f"Component on {component.support} has {np.asarray(component.values).size} values, needs {expected.Q}."
            )
    error = float(np.max(np.abs(V.values - decomposition.reconstruct())))
    return DecompositionCheck(passed=error <= tol * (1.0 + V.norm_inf()), max_error=error)
