# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Floquet isospectrality of corrected summands of oplus-separable pairs.

For ``V = sum_j V_j(n_j, n_r)`` the corrected summand is
``V_j + U_j(n_r)`` with ``U_j = sum_{i != j} mean_{n_i} V_i(n_i, n_r) + u``,
and ``u = -[V]`` fixes the zero Fourier coefficient of the corrected summand
at 0. It equals the average of V over the other summand blocks minus [V], so
it does not depend on how the overlap on the shared block was split.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from floquet_iso_core.config import DEFAULT_CONFIG, SpectralConfig
from floquet_iso_core.isospectral import certify_floquet, certify_partial, randomized_partial
from floquet_iso_core.lattice import PeriodLattice
from floquet_iso_core.models import CertMethod, IsoSpec, Pattern, PatternKind, Verdict
from floquet_iso_core.potential import Potential, average, embed
from floquet_iso_core.separability import Decomposition, decompose

from .errors import HypothesisViolation, PremiseFailed
from .models import ComponentEntry, ComponentFloquetReport, CorrectorValues

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CorrectedComponent:
    """One summand before and after correction, on its ``(d_j + d_r)``-dimensional sub-lattice."""

    index: int
    support: Tuple[int, ...]
    lattice: PeriodLattice
    component: np.ndarray
    corrector: np.ndarray  # U_j on the shared block
    corrected: np.ndarray

    def potential(self) -> Potential:
        return Potential(self.lattice, self.corrected)


@dataclass(frozen=True, eq=False)
class CorrectorSet:
    """Correctors of one oplus-separable potential."""

    pattern: Pattern
    offset: complex  # the constant u
    components: Tuple[CorrectedComponent, ...]

    def normalization_residual(self) -> float:
        return max(abs(complex(np.mean(c.corrected))) for c in self.components)


def _check_oplus(pattern: Pattern, d: int) -> None:
    if pattern.kind != PatternKind.OPLUS:
        raise HypothesisViolation(f"Component isospectrality needs an oplus pattern, got {pattern.to_text()}.")
    for j, size in enumerate(pattern.sizes, start=1):
        if d - size - pattern.shared < 2:
            raise HypothesisViolation(
                f"Block {j} violates d - d_j - d_r >= 2: {d} - {size} - {pattern.shared} < 2.",
                hint="Each summand needs at least two coordinates outside its own and the shared block.",
            )


def _shared_average(decomposition: Decomposition, index: int) -> np.ndarray:
    """Mean of summand ``index`` over its own block, as a function on the shared block."""
    component = decomposition.components[index]
    own = decomposition.pattern.sizes[index]
    grid = component.values.reshape(component.lattice.q)
    return grid.mean(axis=tuple(range(own))).reshape(-1)


def build_correctors(V: Potential, pattern: Pattern, tol: float = DEFAULT_CONFIG.separability_tol) -> CorrectorSet:
    """Decompose ``V`` and build every corrected summand.

    Raises:
        NotSeparable: If ``V`` is not ``pattern``-separable.
    """
    decomposition = decompose(V, pattern, tol)
    offset = -average(V)
    shared_means = [_shared_average(decomposition, i) for i in range(len(decomposition.components))]
    corrected = []
    for j, component in enumerate(decomposition.components):
        own = pattern.sizes[j]
        corrector = sum((m for i, m in enumerate(shared_means) if i != j), np.zeros_like(shared_means[j])) + offset
        lifted = embed(corrector, range(own, own + pattern.shared), component.lattice)
        corrected.append(
            CorrectedComponent(
                index=j + 1,
                support=component.support,
                lattice=component.lattice,
                component=component.values,
                corrector=corrector,
                corrected=component.values + lifted,
            )
        )
    return CorrectorSet(pattern=pattern, offset=offset, components=tuple(corrected))


def _corrector_values(correctors: CorrectorSet, component: CorrectedComponent) -> CorrectorValues:
    return CorrectorValues(offset=complex(correctors.offset), values=[complex(v) for v in component.corrector])


def component_floquet(
    V: Potential,
    Y: Potential,
    pattern: Pattern,
    lambda1: complex,
    lambda2: complex,
    tol: Optional[float] = None,
    full_premise: bool = False,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> ComponentFloquetReport:
    """Certify Floquet isospectrality of each corrected summand pair.

    The generalized Fermi premise is checked at ``config.premise_trials``
    random torus points unless ``full_premise`` asks for the full grid.

    Raises:
        HypothesisViolation: Not an oplus pattern, or ``d - d_j - d_r < 2``.
        NotSeparable: V or Y is not ``pattern``-separable.
        PremiseFailed: The premise does not hold.
    """
    tol = config.tol if tol is None else tol
    lattice = V.lattice
    pattern.validate_for(lattice)
    _check_oplus(pattern, lattice.d)

    spec = IsoSpec.generalized_fermi(lambda1, lambda2, lattice.d)
    if full_premise:
        premise = certify_partial(V, Y, spec, config=config)
    else:
        logger.warning(
            f"Checking the premise at {config.premise_trials} random points only; pass full_premise for a certificate."
        )
        premise = randomized_partial(V, Y, spec, trials=config.premise_trials, config=config)
    if not premise.passed:
        raise PremiseFailed(
            f"V and Y are not generalized Fermi isospectral at ({complex(lambda1)}, {complex(lambda2)}): "
            f"deviation {premise.max_rel_dev:.3e}.",
            premise,
        )

    ours = build_correctors(V, pattern, config.separability_tol)
    theirs = build_correctors(Y, pattern, config.separability_tol)
    entries = []
    for a, b in zip(ours.components, theirs.components):
        cert = certify_floquet(a.potential(), b.potential(), tol, config)
        entries.append(
            ComponentEntry(
                index=a.index,
                support=[axis + 1 for axis in a.support],
                v_corrector=_corrector_values(ours, a),
                y_corrector=_corrector_values(theirs, b),
                report=cert,
            )
        )

    residual = max(ours.normalization_residual(), theirs.normalization_residual())
    passed = all(entry.report.passed for entry in entries)
    report = ComponentFloquetReport(
        verdict=Verdict.PASS if passed else Verdict.FAIL,
        tol=tol,
        pattern=pattern.to_text(),
        premise=premise,
        premise_method=CertMethod.CERTIFIED_GRID.value if full_premise else CertMethod.RANDOMIZED.value,
        normalization_residual=residual,
        components=entries,
    )
    logger.info(f"Component Floquet check for {pattern.to_text()}: {report.verdict.value}")
    return report
