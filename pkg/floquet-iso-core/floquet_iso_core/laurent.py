# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Multivariate Laurent polynomials with a dense coefficient box.

Interpolation samples an evaluator on the tensor grid ``s * omega_j^t`` where
``omega_j`` has order ``hi_j - lo_j + 1`` and ``s = exp(2 pi i phase)`` is a
fixed generic twist, then inverts one axis at a time with an FFT. Evaluators
are batched: they map an ``(N, v)`` array of points to ``N`` values.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from floquet_iso_core.config import DEFAULT_CONFIG, SpectralConfig
from floquet_iso_core.exceptions import DegreeBoundViolation, VariableMismatch, ZeroPoint
from floquet_iso_core.floquet import fermi_evaluator
from floquet_iso_core.potential import Potential

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], np.ndarray]
Bounds = Tuple[Tuple[int, int], ...]

# Coefficients at or below this magnitude are omitted from JSON dumps.
JSON_COEFF_THRESHOLD = 1e-12


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """``sum_e c_e z^e`` over the box ``lo_j <= e_j <= hi_j``."""

    bounds: Bounds
    coeffs: np.ndarray

    def __post_init__(self):
        bounds = tuple((int(lo), int(hi)) for lo, hi in self.bounds)
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        expected = tuple(hi - lo + 1 for lo, hi in bounds)
        if any(size < 1 for size in expected):
            raise DegreeBoundViolation(f"Empty exponent box {list(bounds)}.")
        if coeffs.shape != expected:
            raise DegreeBoundViolation(f"Coefficient box {coeffs.shape} does not match bounds {list(bounds)}.")
        coeffs.setflags(write=False)
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def v(self) -> int:
        return len(self.bounds)

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, ...], complex]) -> "LaurentPoly":
        """Build from ``{exponent: coefficient}`` using the tightest box."""
        if not terms:
            raise DegreeBoundViolation("At least one term is required to infer the variable count.")
        exps = np.array(list(terms.keys()), dtype=np.int64)
        bounds = tuple((int(lo), int(hi)) for lo, hi in zip(exps.min(axis=0), exps.max(axis=0)))
        coeffs = np.zeros(tuple(hi - lo + 1 for lo, hi in bounds), dtype=np.complex128)
        for exp, value in terms.items():
            coeffs[tuple(e - lo for e, (lo, _) in zip(exp, bounds))] += value
        return cls(bounds, coeffs)

    @classmethod
    def zero(cls, v: int) -> "LaurentPoly":
        return cls(tuple((0, 0) for _ in range(v)), np.zeros((1,) * v))

    def coefficient(self, exp: Sequence[int]) -> complex:
        if len(exp) != self.v:
            raise VariableMismatch(f"Exponent {tuple(exp)} has {len(exp)} entries, polynomial has v={self.v}.")
        index = []
        for e, (lo, hi) in zip(exp, self.bounds):
            if not lo <= e <= hi:
                return 0j
            index.append(e - lo)
        return complex(self.coeffs[tuple(index)])

    def terms(self, threshold: float = 0.0) -> List[Tuple[Tuple[int, ...], complex]]:
        lows = np.array([lo for lo, _ in self.bounds])
        out = []
        for index in zip(*np.nonzero(np.abs(self.coeffs) > threshold)):
            out.append((tuple(int(v) for v in np.asarray(index) + lows), complex(self.coeffs[index])))
        return out

    def evaluate(self, z: Sequence[complex]) -> complex:
        return complex(self.evaluate_many(np.asarray(z, dtype=np.complex128).reshape(1, -1))[0])

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Horner evaluation one axis at a time for an ``(N, v)`` array of points."""
        points = np.asarray(points, dtype=np.complex128)
        if points.ndim != 2 or points.shape[1] != self.v:
            raise VariableMismatch(f"Expected points of shape (N, {self.v}), got {points.shape}.")
        if np.any(points == 0):
            raise ZeroPoint("Laurent polynomials cannot be evaluated where a coordinate is zero.")
        acc = np.broadcast_to(self.coeffs, (points.shape[0],) + self.coeffs.shape)
        for axis, (lo, _) in enumerate(self.bounds):
            x = points[:, axis].reshape((-1,) + (1,) * (acc.ndim - 2))
            reduced = np.zeros(acc.shape[:1] + acc.shape[2:], dtype=np.complex128)
            for m in reversed(range(acc.shape[1])):
                reduced = reduced * x + acc[:, m]
            acc = reduced * x**lo
        return np.asarray(acc).reshape(-1)

    def to_json_dict(self, threshold: float = JSON_COEFF_THRESHOLD) -> Dict[str, Any]:
        return {
            "bounds": [[lo, hi] for lo, hi in self.bounds],
            "coeffs": [
                {"exp": list(exp), "re": value.real, "im": value.imag} for exp, value in self.terms(threshold)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> "LaurentPoly":
        bounds = tuple((int(lo), int(hi)) for lo, hi in data["bounds"])
        coeffs = np.zeros(tuple(hi - lo + 1 for lo, hi in bounds), dtype=np.complex128)
        for term in data["coeffs"]:
            index = tuple(e - lo for e, (lo, _) in zip(term["exp"], bounds))
            coeffs[index] = complex(term["re"], term["im"])
        return cls(bounds, coeffs)


def pointwise(fn: Callable[[np.ndarray], complex]) -> Evaluator:
    """Turn a single-point evaluator into a batched one."""

    def batched(points: np.ndarray) -> np.ndarray:
        return np.array([complex(fn(point)) for point in np.asarray(points)], dtype=np.complex128)

    return batched


def grid_nodes(bounds: Bounds, phase: float = DEFAULT_CONFIG.grid_phase) -> List[np.ndarray]:
    twist = np.exp(2j * np.pi * phase)
    nodes = []
    for lo, hi in bounds:
        size = hi - lo + 1
        nodes.append(twist * np.exp(2j * np.pi * np.arange(size) / size))
    return nodes


def tensor_points(axes: Sequence[np.ndarray]) -> np.ndarray:
    """All combinations of per-axis nodes as a ``(prod sizes, v)`` array, first axis slowest."""
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def random_torus_points(count: int, v: int, rng: np.random.Generator) -> np.ndarray:
    return np.exp(2j * np.pi * rng.random((count, v)))


def interpolate_from_samples(
    evaluator: Evaluator,
    bounds: Sequence[Tuple[int, int]],
    *,
    config: SpectralConfig = DEFAULT_CONFIG,
    seed: Optional[int] = None,
) -> LaurentPoly:
    """Recover the Laurent polynomial behind ``evaluator`` from a twisted tensor grid.

    Raises:
        DegreeBoundViolation: If fresh torus evaluations disagree with the
            interpolant beyond ``config.residual_tol``.
    """
    bounds = tuple((int(lo), int(hi)) for lo, hi in bounds)
    if any(hi < lo for lo, hi in bounds):
        raise DegreeBoundViolation(f"Bounds {list(bounds)} contain an empty range.")
    axes = grid_nodes(bounds, config.grid_phase)
    shape = tuple(len(axis) for axis in axes)
    samples = np.asarray(evaluator(tensor_points(axes)), dtype=np.complex128).reshape(shape)
    logger.debug(f"Interpolating on a {shape} grid ({samples.size} samples)")

    twist = np.exp(2j * np.pi * config.grid_phase)
    coeffs = samples
    for axis, (lo, hi) in enumerate(bounds):
        size = hi - lo + 1
        t = np.arange(size)
        unshift = np.exp(-2j * np.pi * t * lo / size)
        coeffs = np.moveaxis(coeffs, axis, -1) * unshift
        coeffs = np.fft.fft(coeffs, axis=-1) / size
        coeffs = coeffs * twist ** (-np.arange(lo, hi + 1, dtype=float))
        coeffs = np.moveaxis(coeffs, -1, axis)
    poly = LaurentPoly(bounds, coeffs)

    rng = np.random.default_rng(config.seed if seed is None else seed)
    fresh = random_torus_points(config.residual_points, len(bounds), rng)
    expected = np.asarray(evaluator(fresh), dtype=np.complex128)
    got = poly.evaluate_many(fresh)
    scale = max(float(np.max(np.abs(samples))), float(np.max(np.abs(expected))), 1e-300)
    residual = float(np.max(np.abs(got - expected))) / scale
    if residual > config.residual_tol:
        raise DegreeBoundViolation(
            f"Interpolant misses fresh evaluations by {residual:.3e} (relative) with bounds {list(bounds)}.",
            hint="The evaluator is not a Laurent polynomial within these degree bounds.",
        )
    logger.debug(f"Interpolation residual {residual:.3e}")
    return poly


def _aligned(p: LaurentPoly, q: LaurentPoly) -> Tuple[np.ndarray, np.ndarray]:
    bounds = tuple((min(a[0], b[0]), max(a[1], b[1])) for a, b in zip(p.bounds, q.bounds))
    boxes = []
    for poly in (p, q):
        box = np.zeros(tuple(hi - lo + 1 for lo, hi in bounds), dtype=np.complex128)
        offsets = [lo - outer_lo for (lo, _), (outer_lo, _) in zip(poly.bounds, bounds)]
        box[tuple(slice(o, o + size) for o, size in zip(offsets, poly.coeffs.shape))] = poly.coeffs
        boxes.append(box)
    return boxes[0], boxes[1]


@dataclass(frozen=True)
class EqualityResult:
    passed: bool
    max_gap: float


def equal_within(p: LaurentPoly, q: LaurentPoly, tol: float = DEFAULT_CONFIG.tol) -> EqualityResult:
    """Coefficient-wise comparison on the union box, relative to ``1 + max |c|``."""
    if p.v != q.v:
        raise VariableMismatch(f"Cannot compare polynomials in {p.v} and {q.v} variables.")
    a, b = _aligned(p, q)
    gap = float(np.max(np.abs(a - b)))
    scale = 1.0 + max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return EqualityResult(passed=gap <= tol * scale, max_gap=gap)


@dataclass(frozen=True)
class IdentityTestResult:
    passed: bool
    max_rel_gap: float
    trials: int
    seed: int


def randomized_identity_test(
    f: Evaluator,
    g: Evaluator,
    v: int,
    *,
    trials: int = DEFAULT_CONFIG.randomized_trials,
    tol: float = DEFAULT_CONFIG.tol,
    scale_probe: float = 0.0,
    seed: int = 0,
) -> IdentityTestResult:
    """Compare two evaluators at ``trials`` random points of the unit torus ``T^v``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    points = random_torus_points(trials, v, rng)
    fv = np.asarray(f(points), dtype=np.complex128)
    gv = np.asarray(g(points), dtype=np.complex128)
    scale = np.maximum(np.maximum(np.abs(fv), np.abs(gv)), scale_probe)
    gap = np.abs(fv - gv)
    rel = np.divide(gap, scale, out=np.zeros_like(gap), where=scale > 0)
    worst = float(np.max(rel))
    return IdentityTestResult(passed=bool(np.all(gap <= tol * scale)), max_rel_gap=worst, trials=trials, seed=seed)


def degree_bounds(V: Potential) -> Bounds:
    """``[-Q/q_j, Q/q_j]`` per variable, the z-degree range of ``det(D_V(z) - lam I)``."""
    Q = V.lattice.Q
    return tuple((-(Q // p), Q // p) for p in V.lattice.q)


def fermi_polynomial(
    V: Potential, lam: complex, config: SpectralConfig = DEFAULT_CONFIG, seed: Optional[int] = None
) -> LaurentPoly:
    """Interpolate ``z -> det(D_V(z) - lam I)`` within its degree bounds."""
    return interpolate_from_samples(fermi_evaluator(V, lam, config), degree_bounds(V), config=config, seed=seed)
