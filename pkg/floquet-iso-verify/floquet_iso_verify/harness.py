# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Executable checks of the isospectrality results for real periodic potentials.

Every check re-certifies its premise before looking at the conclusion. A
premise that does not certify raises :class:`PremiseFailed`; it is never
reported as a FAIL of the conclusion.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from floquet_iso_core.config import DEFAULT_CONFIG, SpectralConfig
from floquet_iso_core.isospectral import certify_partial, derive_lambda2
from floquet_iso_core.lattice import PeriodLattice
from floquet_iso_core.models import IsoMode, IsoReport, IsoSpec, Pattern, Verdict
from floquet_iso_core.potential import Potential, TransformOp, apply_recipe, average, dft
from floquet_iso_core.separability import check

from .errors import DegenerateSampling, HypothesisViolation, PremiseFailed
from .models import (
    AmbarzumianEntry,
    AmbarzumianReport,
    AverageShiftReport,
    ModeMassReport,
    PremiseEntry,
    SumIdentityReport,
    TransferReport,
)

logger = logging.getLogger(__name__)

Partner = Union[Potential, Sequence[TransformOp]]


def _normalize_S(S: Iterable[int], d: int, minimum: int) -> List[int]:
    S = sorted({int(j) for j in S})
    if len(S) < minimum:
        raise HypothesisViolation(f"The result needs #S >= {minimum}, got S={S}.")
    if S[0] < 1 or S[-1] > d:
        raise HypothesisViolation(f"S={S} is not a subset of 1..{d}.")
    return S


def _require_real(**potentials: Potential) -> None:
    for name, W in potentials.items():
        if not W.is_real:
            raise HypothesisViolation(f"{name} must be real-valued.")


def certify_premise(
    V: Potential,
    Y: Potential,
    lambda1: complex,
    lambda2: complex,
    S: Sequence[int],
    fixed_k: Optional[Dict[int, float]] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> IsoReport:
    """Grid-certify generalized partial Fermi isospectrality over S or raise :class:`PremiseFailed`."""
    spec = IsoSpec(
        mode=IsoMode.GENERALIZED_PARTIAL_FERMI,
        lambda1=lambda1,
        lambda2=lambda2,
        S=list(S),
        fixed_k=dict(fixed_k or {}),
    )
    report = certify_partial(V, Y, spec, config=config)
    if not report.passed:
        raise PremiseFailed(
            f"Premise over S={report.S} with lambda1={complex(lambda1)}, lambda2={complex(lambda2)} "
            f"did not certify (deviation {report.max_rel_dev:.3e} > {report.tol:g}).",
            report,
            hint="The conclusion is not asserted for pairs that are not isospectral.",
        )
    return report


def verify_average_shift(
    V: Potential,
    Y: Potential,
    lambda1: complex,
    lambda2: complex,
    S: Sequence[int],
    fixed_k: Optional[Dict[int, float]] = None,
    tol: Optional[float] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> AverageShiftReport:
    """Isospectral pairs over #S >= 2 satisfy ``[V] - [Y] = lambda1 - lambda2``."""
    tol = config.tol if tol is None else tol
    S = _normalize_S(S, V.lattice.d, 2)
    premise = certify_premise(V, Y, lambda1, lambda2, S, fixed_k, config)
    mean_v, mean_y = average(V), average(Y)
    residual = abs((mean_v - mean_y) - (complex(lambda1) - complex(lambda2)))
    report = AverageShiftReport(
        verdict=Verdict.PASS if residual <= tol else Verdict.FAIL,
        tol=tol,
        premise=premise,
        mean_v=mean_v,
        mean_y=mean_y,
        lambda1=complex(lambda1),
        lambda2=complex(lambda2),
        residual=residual,
    )
    logger.info(f"Average shift over S={S}: {report.verdict.value} (residual {residual:.3e})")
    return report


def shifted_mode_weights(V: Potential, lam: complex) -> np.ndarray:
    """``|(V - lam)^(l)|^2`` for every mode ``l``."""
    coeffs = np.array(dft(V).coeffs)
    coeffs[0] -= complex(lam)
    return np.abs(coeffs) ** 2


def _random_multipliers(rng: np.random.Generator, count: int) -> np.ndarray:
    modulus = rng.uniform(0.5, 2.0, count)
    phase = rng.uniform(0.0, 2 * np.pi, count)
    return modulus * np.exp(1j * phase)


def sum_identity_sides(
    lattice: PeriodLattice, S: Sequence[int], z: np.ndarray, weights: Sequence[np.ndarray]
) -> Tuple[np.ndarray, float]:
    """Evaluate ``sum_n sum_l w(l) / (D(n) D(n + l))`` for each weight table at one point.

    ``D(n) = sum_{j in S} rho^j_{n_j} z_j``; returns the sums and ``min |D|``.
    """
    columns = [j - 1 for j in S]
    D = lattice.roots[:, columns] @ np.asarray(z, dtype=np.complex128)
    smallest = float(np.min(np.abs(D)))
    if smallest == 0.0:
        return np.full(len(weights), np.nan, dtype=np.complex128), smallest
    inv = 1.0 / D
    shifted = inv[lattice.add_table]
    return np.array([inv @ (shifted @ w) for w in weights]), smallest


def verify_sum_identity(
    V: Potential,
    Y: Potential,
    lambda1: complex,
    lambda2: complex,
    S: Sequence[int],
    samples: int = 50,
    fixed_k: Optional[Dict[int, float]] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> SumIdentityReport:
    """Compare both sides of the double-sum identity at random admissible z over S.

    Raises:
        HypothesisViolation: V or Y is complex, or #S < 2.
        PremiseFailed: The pair does not certify over S.
        DegenerateSampling: A sample kept hitting a vanishing denominator.
    """
    tol = config.tol if tol is None else tol
    seed = config.seed if seed is None else seed
    _require_real(V=V, Y=Y)
    lattice = V.lattice
    S = _normalize_S(S, lattice.d, 2)
    premise = certify_premise(V, Y, lambda1, lambda2, S, fixed_k, config)
    weights = [shifted_mode_weights(V, lambda1), shifted_mode_weights(Y, lambda2)]

    rng = np.random.default_rng(seed)
    worst, rejected = 0.0, 0
    for sample in range(samples):
        for _ in range(config.max_resamples):
            z = _random_multipliers(rng, len(S))
            (lhs, rhs), smallest = sum_identity_sides(lattice, S, z, weights)
            if smallest >= config.denominator_guard:
                break
            rejected += 1
        else:
            raise DegenerateSampling(
                f"Sample {sample} hit denominators below {config.denominator_guard:g} "
                f"in {config.max_resamples} draws."
            )
        scale = max(abs(lhs), abs(rhs))
        gap = abs(lhs - rhs) / scale if scale > 0 else 0.0
        worst = max(worst, gap)

    report = SumIdentityReport(
        verdict=Verdict.PASS if worst <= tol else Verdict.FAIL,
        tol=tol,
        premise=premise,
        samples=samples,
        resamples=rejected,
        max_rel_gap=worst,
        seed=seed,
    )
    logger.info(f"Sum identity over S={S}: {report.verdict.value} ({worst:.3e}, {rejected} redraws)")
    return report


def class_masses(lattice: PeriodLattice, weights: np.ndarray, triple: Sequence[int]) -> np.ndarray:
    """``M(a) = sum_{l_T = a} w(l) + sum_{l_T = -a} w(l)`` (``-a = a`` counted once), indexed by ``a``."""
    axes = [j - 1 for j in triple]
    shape = tuple(lattice.q[axis] for axis in axes)
    keys = np.ravel_multi_index(tuple(lattice.multi_indices[:, axes].T), shape)
    mass = np.bincount(keys, weights=weights, minlength=int(np.prod(shape)))
    classes = np.indices(shape).reshape(len(axes), -1).T
    mirrored = np.ravel_multi_index(tuple((-classes % np.asarray(shape)).T), shape)
    own = np.arange(mass.size)
    return np.where(mirrored == own, mass, mass + mass[mirrored])


def verify_mode_masses(
    V: Potential,
    Y: Potential,
    lambda1: complex,
    lambda2: complex,
    S: Sequence[int],
    triple: Optional[Sequence[int]] = None,
    fixed_k: Optional[Dict[int, float]] = None,
    tol: Optional[float] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> ModeMassReport:
    """Compare Fourier mass per frequency class of a coordinate triple inside S.

    Only the zero class and classes with at least two nonzero coordinates are
    compared; classes with a single nonzero coordinate share vanishing
    determinants and are not separated by the identity.
    """
    tol = config.tol if tol is None else tol
    _require_real(V=V, Y=Y)
    lattice = V.lattice
    S = _normalize_S(S, lattice.d, 3)
    triple = sorted(int(j) for j in (triple if triple is not None else S[:3]))
    if len(set(triple)) != 3 or not set(triple) <= set(S):
        raise HypothesisViolation(f"The triple {triple} must be three distinct coordinates of S={S}.")
    premise = certify_premise(V, Y, lambda1, lambda2, S, fixed_k, config)

    wv = shifted_mode_weights(V, lambda1)
    wy = shifted_mode_weights(Y, lambda2)
    mv = class_masses(lattice, wv, triple)
    my = class_masses(lattice, wy, triple)
    shape = tuple(lattice.q[j - 1] for j in triple)
    classes = np.indices(shape).reshape(3, -1).T
    nonzero = np.count_nonzero(classes, axis=1)
    selected = (nonzero == 0) | (nonzero >= 2)

    scale = max(float(wv.sum()), float(wy.sum()))
    gaps = np.where(selected, np.abs(mv - my), 0.0) / (scale if scale > 0 else 1.0)
    worst_idx = int(np.argmax(gaps))
    worst = float(gaps[worst_idx])
    report = ModeMassReport(
        verdict=Verdict.PASS if worst <= tol else Verdict.FAIL,
        tol=tol,
        premise=premise,
        triple=triple,
        classes_checked=int(selected.sum()),
        max_gap=worst,
        worst_class=[int(v) for v in classes[worst_idx]] if worst > 0 else None,
    )
    logger.info(f"Mode masses on T={triple}: {report.verdict.value} ({worst:.3e})")
    return report


def default_transfer_set(s: int, t: int, d: int) -> List[int]:
    """``{s, t}`` plus the smallest remaining coordinate."""
    third = next(j for j in range(1, d + 1) if j not in (s, t))
    return sorted({s, t, third})


def separability_transfer(
    V: Potential,
    pattern: Pattern,
    partner: Partner,
    lambda1: complex = 0j,
    S_map: Optional[Mapping[Tuple[int, int], Sequence[int]]] = None,
    tol: Optional[float] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> TransferReport:
    """Certify the pairwise premises, then check that the partner keeps the pattern.

    ``partner`` is either the partner potential or a transform recipe applied
    to ``V``. ``S_map`` assigns the set S(s, t) to each required pair; the
    default is :func:`default_transfer_set`. The forbidden coefficients of the
    partner are judged against the largest Fourier coefficient of ``V``.
    """
    tol = config.separability_tol if tol is None else tol
    lattice = V.lattice
    d = lattice.d
    if d < 3:
        raise HypothesisViolation(f"Separability transfer needs d >= 3, got d={d}.")
    _require_real(V=V)
    pattern.validate_for(lattice)
    own = check(dft(V), pattern, tol)
    if not own.passed:
        raise HypothesisViolation(
            f"V is not {pattern.to_text()}-separable (worst coefficient {own.worst_coefficient:.3e})."
        )
    Y = partner if isinstance(partner, Potential) else apply_recipe(V, partner)
    lambda2 = derive_lambda2(V, Y, lambda1)

    grouped: Dict[Tuple[int, ...], List[List[int]]] = {}
    for s, t in pattern.required_pairs():
        S = _normalize_S((S_map or {}).get((s, t)) or default_transfer_set(s, t, d), d, 3)
        if s not in S or t not in S:
            raise HypothesisViolation(f"S(s,t)={S} must contain s={s} and t={t}.")
        grouped.setdefault(tuple(S), []).append([s, t])
    premises = [
        PremiseEntry(pairs=pairs, report=certify_premise(V, Y, lambda1, lambda2, list(S), config=config))
        for S, pairs in grouped.items()
    ]

    result = check(dft(Y), pattern, tol, scale=own.scale)
    report = TransferReport(
        verdict=result.verdict,
        tol=tol,
        pattern=pattern.to_text(),
        lambda1=complex(lambda1),
        lambda2=lambda2,
        premises=premises,
        separability=result,
    )
    logger.info(
        f"Separability transfer for {pattern.to_text()} over {len(premises)} premise set(s): {report.verdict.value}"
    )
    return report


def ambarzumian_probe(
    V: Potential,
    lambdas: Sequence[complex],
    S: Sequence[int] = (1, 2, 3),
    tol: Optional[float] = None,
    target: Literal["mean", "zero"] = "mean",
    fixed_k: Optional[Dict[int, float]] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> AmbarzumianReport:
    """Test V against a constant partner at each scanned energy.

    ``target="mean"`` compares with ``Y = [V]`` and ``lambda2`` from the mean
    shift; ``target="zero"`` compares with ``Y = 0`` at ``lambda2 = lambda1``.
    PASS means the outcome is consistent: a certified energy comes with a
    constant (or zero) V, and a nonconstant V certifies nowhere.
    """
    tol = config.tol if tol is None else tol
    lattice = V.lattice
    if lattice.d < 3:
        raise HypothesisViolation(f"The probe needs d >= 3, got d={lattice.d}.")
    _require_real(V=V)
    S = _normalize_S(S, lattice.d, 3)
    if not lambdas:
        raise HypothesisViolation("The energy scan is empty.")

    mean = average(V)
    if target == "mean":
        Y = Potential.constant(lattice, mean.real)
        residual = float(np.max(np.abs(V.values - mean.real)))
    elif target == "zero":
        Y = Potential.constant(lattice, 0.0)
        residual = V.norm_inf()
    else:
        raise ValueError(f"target must be 'mean' or 'zero', got {target!r}")

    entries = []
    for lam in lambdas:
        lambda2 = derive_lambda2(V, Y, lam) if target == "mean" else complex(lam)
        spec = IsoSpec(
            mode=IsoMode.GENERALIZED_PARTIAL_FERMI, lambda1=lam, lambda2=lambda2, S=S, fixed_k=dict(fixed_k or {})
        )
        cert = certify_partial(V, Y, spec, config=config)
        entries.append(
            AmbarzumianEntry(lambda1=complex(lam), lambda2=lambda2, certified=cert.passed, max_rel_dev=cert.max_rel_dev)
        )

    any_certified = any(entry.certified for entry in entries)
    constant = residual <= tol
    consistent = constant if any_certified else not constant
    report = AmbarzumianReport(
        verdict=Verdict.PASS if consistent else Verdict.FAIL,
        tol=tol,
        target=target,
        S=S,
        entries=entries,
        constancy_residual=residual,
        any_certified=any_certified,
    )
    logger.info(
        f"Ambarzumian probe ({target}) over {len(entries)} energies: certified={any_certified}, "
        f"residual {residual:.3e}, {report.verdict.value}"
    )
    return report
