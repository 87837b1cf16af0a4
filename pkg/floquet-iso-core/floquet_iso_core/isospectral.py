# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Certification of Floquet, Fermi and (generalized) partial Fermi isospectrality.

``k -> det(D_V(k) - lam I)`` is a trigonometric polynomial of degree at most
``Q / q_j`` in each ``k_j``, so agreement of two such functions on the tensor
grid ``k_j = t / (2 Q / q_j + 1)`` is agreement everywhere, including complex
k. Certified verdicts compare on that grid with a tolerance relative to the
largest value seen on it.

Floquet certification compares the full lambda-polynomial at every grid
point by sampling it on a circle of radius ``R`` that encloses both spectra;
``Q + 1`` samples fix a degree-Q polynomial, and comparing samples keeps the
coefficients in the well-conditioned basis ``c_m R^m``.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from floquet_iso_core.config import DEFAULT_CONFIG, SpectralConfig
from floquet_iso_core.exceptions import BadSpec, LatticeMismatch
from floquet_iso_core.floquet import (
    PointConvention,
    characteristic_values,
    coefficients_from_nodes,
    floquet_radius,
    node_values,
)
from floquet_iso_core.laurent import randomized_identity_test, random_torus_points
from floquet_iso_core.lattice import PeriodLattice
from floquet_iso_core.models import PARTIAL_MODES, CertMethod, IsoMode, IsoReport, IsoSpec, Verdict
from floquet_iso_core.potential import AddConstant, Potential, TransformOp, apply_recipe, average

logger = logging.getLogger(__name__)

# Runtime guard on the mean-shift identity for certified pairs with #S >= 2.
MEAN_SHIFT_TOL = 1e-8


def _same_lattice(V: Potential, Y: Potential) -> PeriodLattice:
    if V.lattice != Y.lattice:
        raise LatticeMismatch(f"Potentials live on different lattices: {list(V.lattice.q)} vs {list(Y.lattice.q)}.")
    return V.lattice


def grid_sizes(lattice: PeriodLattice, S: Iterable[int]) -> List[int]:
    """Certification grid size ``2 Q / q_j + 1`` for every 1-based coordinate in S."""
    return [2 * (lattice.Q // lattice.q[j - 1]) + 1 for j in sorted(S)]


def certification_points(lattice: PeriodLattice, S: Sequence[int], fixed_k: Dict[int, float]) -> np.ndarray:
    """Real quasi-momenta on the tensor grid over S with the other coordinates frozen, shape ``(P, d)``."""
    S = sorted(S)
    axes = []
    for j in range(1, lattice.d + 1):
        if j in S:
            size = 2 * (lattice.Q // lattice.q[j - 1]) + 1
            axes.append(np.arange(size) / size)
        else:
            axes.append(np.array([fixed_k.get(j, 0.0)]))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def _relative_gap(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    gap = float(np.max(np.abs(a - b), initial=0.0))
    if scale == 0.0:
        return 0.0 if gap == 0.0 else float("inf")
    return gap / scale


def _energy_certificate(
    V: Potential,
    Y: Potential,
    lambda1: complex,
    lambda2: complex,
    S: Sequence[int],
    fixed_k: Dict[int, float],
    config: SpectralConfig,
) -> Tuple[float, List[int]]:
    lattice = _same_lattice(V, Y)
    points = certification_points(lattice, S, fixed_k)
    logger.debug(f"Certifying on {points.shape[0]} grid points over S={list(S)}")
    pv = characteristic_values(V, points, lambda1, PointConvention.K, config)
    py = characteristic_values(Y, points, lambda2, PointConvention.K, config)
    return _relative_gap(pv, py), grid_sizes(lattice, S)


def _coefficient_gap(nv: np.ndarray, ny: np.ndarray, radius: float) -> float:
    """Worst ``max |c_V - c_Y| / (1 + max |c|)`` over points, from circle samples of both polynomials."""
    if nv.shape[0] == 0:
        return 0.0
    cv = coefficients_from_nodes(nv, np.full(nv.shape[0], radius))
    cy = coefficients_from_nodes(ny, np.full(ny.shape[0], radius))
    scale = 1.0 + np.maximum(np.max(np.abs(cv), axis=1), np.max(np.abs(cy), axis=1))
    return float(np.max(np.max(np.abs(cv - cy), axis=1) / scale))


def mean_shift_residual(V: Potential, Y: Potential, lambda1: complex, lambda2: complex) -> float:
    """``|([V] - [Y]) - (lambda1 - lambda2)|``; zero for every isospectral claim with #S >= 2."""
    return abs((average(V) - average(Y)) - (complex(lambda1) - complex(lambda2)))


def _verdict(deviation: float, tol: float) -> Verdict:
    return Verdict.PASS if deviation <= tol else Verdict.FAIL


def certify_fermi(
    V: Potential,
    Y: Potential,
    lambda0: complex,
    tol: Optional[float] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> IsoReport:
    """Grid-certify ``det(D_V(k) - lambda0 I) = det(D_Y(k) - lambda0 I)`` for all k."""
    tol = config.tol if tol is None else tol
    lattice = _same_lattice(V, Y)
    S = list(range(1, lattice.d + 1))
    deviation, grid = _energy_certificate(V, Y, lambda0, lambda0, S, {}, config)
    report = IsoReport(
        verdict=_verdict(deviation, tol),
        mode=IsoMode.FERMI,
        S=S,
        lambda1=lambda0,
        lambda2=lambda0,
        method=CertMethod.CERTIFIED_GRID,
        max_rel_dev=deviation,
        grid=grid,
        tol=tol,
    )
    logger.info(f"Fermi certification at lambda={complex(lambda0)}: {report.verdict.value} ({deviation:.3e})")
    return report


def certify_floquet(
    V: Potential, Y: Potential, tol: Optional[float] = None, config: SpectralConfig = DEFAULT_CONFIG
) -> IsoReport:
    """Grid-certify equality of the full lambda-characteristic polynomials at every real k."""
    tol = config.tol if tol is None else tol
    lattice = _same_lattice(V, Y)
    S = list(range(1, lattice.d + 1))
    points = certification_points(lattice, S, {})
    radius = max(floquet_radius(V), floquet_radius(Y))
    nv = node_values(V, points, radius, PointConvention.K, config)
    ny = node_values(Y, points, radius, PointConvention.K, config)
    deviation = max((_relative_gap(a, b) for a, b in zip(nv, ny)), default=0.0)
    report = IsoReport(
        verdict=_verdict(deviation, tol),
        mode=IsoMode.FLOQUET,
        S=S,
        method=CertMethod.CERTIFIED_GRID,
        max_rel_dev=deviation,
        max_coeff_dev=_coefficient_gap(nv, ny, radius),
        grid=grid_sizes(lattice, S),
        tol=tol,
    )
    logger.info(f"Floquet certification: {report.verdict.value} ({deviation:.3e})")
    return report


def certify_partial(
    V: Potential,
    Y: Potential,
    spec: IsoSpec,
    tol: Optional[float] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> IsoReport:
    """Grid-certify ``P_V(k, lambda1) = P_Y(k, lambda2)`` over S with ``k_j = k_j*`` outside S."""
    tol = config.tol if tol is None else tol
    lattice = _same_lattice(V, Y)
    if spec.mode not in PARTIAL_MODES:
        raise BadSpec(
            f"certify_partial handles {sorted(m.value for m in PARTIAL_MODES)}, got {spec.mode.value}.",
            hint="Use certify_fermi or certify_floquet for those modes.",
        )
    fixed = spec.validate_for(lattice)
    deviation, grid = _energy_certificate(V, Y, spec.lambda1, spec.lambda2, spec.S, fixed, config)
    verdict = _verdict(deviation, tol)
    shift, reason = None, None
    if len(spec.S) >= 2:
        shift = mean_shift_residual(V, Y, spec.lambda1, spec.lambda2)
        if verdict == Verdict.PASS and shift > MEAN_SHIFT_TOL:
            verdict = Verdict.FAIL
            reason = f"grid agreement within tol, but the mean-shift identity is violated by {shift:.3e}"
            logger.warning(f"Rejecting {spec.mode.value} certificate: {reason}")
    report = IsoReport(
        verdict=verdict,
        mode=spec.mode,
        S=list(spec.S),
        lambda1=spec.lambda1,
        lambda2=spec.lambda2,
        fixed_k=fixed,
        method=CertMethod.CERTIFIED_GRID,
        max_rel_dev=deviation,
        mean_shift_residual=shift,
        reason=reason,
        grid=grid,
        tol=tol,
    )
    logger.info(f"{spec.mode.value} certification over S={spec.S}: {report.verdict.value} ({deviation:.3e})")
    return report


def _randomized_energy(
    V: Potential,
    Y: Potential,
    lambda1: complex,
    lambda2: complex,
    S: Sequence[int],
    fixed_k: Dict[int, float],
    trials: int,
    tol: float,
    seed: int,
    config: SpectralConfig,
) -> Tuple[float, bool]:
    lattice = _same_lattice(V, Y)
    S = sorted(S)
    frozen = {j: np.exp(2j * np.pi * fixed_k.get(j, 0.0)) for j in range(1, lattice.d + 1) if j not in S}

    def lift(z_free: np.ndarray) -> np.ndarray:
        full = np.empty((z_free.shape[0], lattice.d), dtype=np.complex128)
        for column, j in enumerate(S):
            full[:, j - 1] = z_free[:, column]
        for j, w in frozen.items():
            full[:, j - 1] = w
        return full

    def f(z: np.ndarray) -> np.ndarray:
        return characteristic_values(V, lift(z), lambda1, PointConvention.Z, config)

    def g(z: np.ndarray) -> np.ndarray:
        return characteristic_values(Y, lift(z), lambda2, PointConvention.Z, config)

    result = randomized_identity_test(f, g, len(S), trials=trials, tol=tol, seed=seed)
    return result.max_rel_gap, result.passed


def randomized_partial(
    V: Potential,
    Y: Potential,
    spec: IsoSpec,
    *,
    trials: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> IsoReport:
    """Randomized counterpart of the energy-level certifications (any mode except floquet)."""
    tol = config.tol if tol is None else tol
    trials = config.randomized_trials if trials is None else trials
    seed = config.seed if seed is None else seed
    lattice = _same_lattice(V, Y)
    if spec.mode == IsoMode.FLOQUET:
        raise BadSpec("Use randomized_floquet for floquet claims.")
    fixed = spec.validate_for(lattice)
    deviation, passed = _randomized_energy(
        V, Y, spec.lambda1, spec.lambda2, spec.S, fixed, trials, tol, seed, config
    )
    return IsoReport(
        verdict=Verdict.PASS if passed else Verdict.FAIL,
        mode=spec.mode,
        S=list(spec.S),
        lambda1=spec.lambda1,
        lambda2=spec.lambda2,
        fixed_k=fixed,
        method=CertMethod.RANDOMIZED,
        max_rel_dev=deviation,
        trials=trials,
        seed=seed,
        tol=tol,
    )


def randomized_fermi(
    V: Potential, Y: Potential, lambda0: complex, **kwargs
) -> IsoReport:
    return randomized_partial(V, Y, IsoSpec.fermi(lambda0, V.lattice.d), **kwargs)


def randomized_floquet(
    V: Potential,
    Y: Potential,
    *,
    trials: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> IsoReport:
    """Compare lambda-polynomials at random torus points instead of the full grid."""
    tol = config.tol if tol is None else tol
    trials = config.randomized_trials if trials is None else trials
    seed = config.seed if seed is None else seed
    lattice = _same_lattice(V, Y)
    z = random_torus_points(trials, lattice.d, np.random.default_rng(seed))
    radius = max(floquet_radius(V), floquet_radius(Y))
    nv = node_values(V, z, radius, PointConvention.Z, config)
    ny = node_values(Y, z, radius, PointConvention.Z, config)
    deviation = max(_relative_gap(a, b) for a, b in zip(nv, ny))
    return IsoReport(
        verdict=_verdict(deviation, tol),
        mode=IsoMode.FLOQUET,
        S=list(range(1, lattice.d + 1)),
        method=CertMethod.RANDOMIZED,
        max_rel_dev=deviation,
        max_coeff_dev=_coefficient_gap(nv, ny, radius),
        trials=trials,
        seed=seed,
        tol=tol,
    )


def certify(
    V: Potential,
    Y: Potential,
    spec: IsoSpec,
    *,
    method: CertMethod = CertMethod.CERTIFIED_GRID,
    tol: Optional[float] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> IsoReport:
    """Dispatch a claim to the matching certification routine."""
    if method == CertMethod.RANDOMIZED:
        if spec.mode == IsoMode.FLOQUET:
            return randomized_floquet(V, Y, tol=tol, config=config)
        return randomized_partial(V, Y, spec, tol=tol, config=config)
    if spec.mode == IsoMode.FLOQUET:
        return certify_floquet(V, Y, tol, config)
    if spec.mode == IsoMode.FERMI:
        spec.validate_for(V.lattice)
        return certify_fermi(V, Y, spec.lambda1, tol, config)
    return certify_partial(V, Y, spec, tol, config)


def derive_lambda2(V: Potential, Y: Potential, lambda1: complex) -> complex:
    """The only ``lambda2`` compatible with isospectrality over #S >= 2: ``lambda1 - [V] + [Y]``."""
    _same_lattice(V, Y)
    return complex(lambda1) - average(V) + average(Y)


def make_isospectral_partner(
    V: Potential, recipe: Sequence[TransformOp], c: complex = 0j, lambda1: complex = 0j
) -> Tuple[Potential, IsoSpec]:
    """Apply translations/reflections, then add ``c``; return the partner and the expected claim.

    ``add_constant`` steps in the recipe are folded into ``c``. The claim is
    floquet for ``c = 0`` and generalized_fermi with ``lambda2 = lambda1 + c``
    otherwise; it is an expectation to certify, not a result.
    """
    geometric = [op for op in recipe if not isinstance(op, AddConstant)]
    c = complex(c) + sum((complex(op.c) for op in recipe if isinstance(op, AddConstant)), 0j)
    Y = apply_recipe(V, geometric)
    d = V.lattice.d
    if c == 0:
        return Y, IsoSpec.floquet(d)
    Y = apply_recipe(Y, [AddConstant(c)])
    return Y, IsoSpec.generalized_fermi(lambda1, complex(lambda1) + c, d)


def restrict_spec(spec: IsoSpec, S: Sequence[int], fixed_k: Optional[Dict[int, float]] = None) -> IsoSpec:
    """Sub-claim over ``S`` (a subset of ``spec.S``) with extra coordinates frozen."""
    S = sorted(set(S))
    if not S or not set(S) <= set(spec.S):
        raise BadSpec(f"S'={S} must be a non-empty subset of S={spec.S}.")
    mode = IsoMode.PARTIAL_FERMI if spec.mode in (IsoMode.FERMI, IsoMode.PARTIAL_FERMI) else (
        IsoMode.GENERALIZED_PARTIAL_FERMI
    )
    fixed = dict(spec.fixed_k)
    fixed.update(fixed_k or {})
    return IsoSpec(mode=mode, lambda1=spec.lambda1, lambda2=spec.lambda2, S=S, fixed_k=fixed)
