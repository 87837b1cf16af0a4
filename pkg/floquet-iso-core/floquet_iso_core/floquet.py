# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Floquet matrices of ``Delta + V`` and their spectral data.

All builders share :func:`assemble`, which accumulates the nearest-neighbour
hops of the discrete Laplacian on W for a stack of Floquet multipliers
``w_j``. A hop ``n -> n + e_j`` that leaves W picks up ``w_j``; a hop
``n -> n - e_j`` that leaves W picks up ``1 / w_j``. Periods 1 and 2 make
several hops land on the same entry and their contributions add.

Conventions for the multipliers:

- ``k`` (quasi-momenta): ``w_j = exp(2 pi i k_j)``, giving ``D_V(k)``.
- ``z``: ``w_j = z_j``, giving ``D_V(k)`` with ``z_j = exp(2 pi i k_j)``.
- ``z_tilde``: ``w_j = z_j ** q_j``, giving the matrix unitarily equivalent to
  ``A_z + B_V``.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from floquet_iso_core.config import DEFAULT_CONFIG, SpectralConfig
from floquet_iso_core.exceptions import SpectralParameterOutOfRange, ZeroSpectralParameter
from floquet_iso_core.lattice import PeriodLattice
from floquet_iso_core.parallel import map_chunks
from floquet_iso_core.potential import Potential, dft

logger = logging.getLogger(__name__)


class PointConvention(str, Enum):
    K = "k"
    Z = "z"
    Z_TILDE = "z_tilde"


@dataclass(frozen=True, eq=False)
class FloquetMatrix:
    """A dense ``Q x Q`` Floquet matrix and the point it was built at."""

    lattice: PeriodLattice
    entries: np.ndarray
    point: Tuple[complex, ...]
    convention: PointConvention

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return self.hermitian_residual() <= tol


@dataclass(frozen=True, eq=False)
class FloquetPair:
    """Diagonal ``A_z`` (stored as its diagonal) and the Fourier-coefficient matrix ``B_V``."""

    lattice: PeriodLattice
    diagonal: np.ndarray
    B: np.ndarray
    z: Tuple[complex, ...]

    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal) + self.B


@lru_cache(maxsize=64)
def _hops(lattice: PeriodLattice) -> List[Tuple[int, int, np.ndarray, np.ndarray]]:
    """``(axis, sign, target columns, wraps)`` for every hop direction."""
    n = lattice.multi_indices
    hops = []
    for axis, period in enumerate(lattice.q):
        for sign in (+1, -1):
            step = np.zeros(lattice.d, dtype=np.int64)
            step[axis] = sign
            cols = lattice.linear_index(n + step)
            wraps = n[:, axis] == (period - 1 if sign > 0 else 0)
            hops.append((axis, sign, cols, wraps))
    return hops


def assemble(V: Potential, multipliers: np.ndarray) -> np.ndarray:
    """Stack of Floquet matrices for multipliers of shape ``(B, d)``; returns ``(B, Q, Q)``."""
    lattice = V.lattice
    w = np.asarray(multipliers, dtype=np.complex128).reshape(-1, lattice.d)
    Q = lattice.Q
    rows = np.arange(Q)
    out = np.zeros((w.shape[0], Q, Q), dtype=np.complex128)
    out[:, rows, rows] = V.values
    for axis, sign, cols, wraps in _hops(lattice):
        phase = w[:, axis] if sign > 0 else 1.0 / w[:, axis]
        out[:, rows, cols] += np.where(wraps[None, :], phase[:, None], 1.0)
    return out


def _check_k(k: np.ndarray, max_imag_k: float) -> None:
    worst = float(np.max(np.abs(np.imag(k)))) if k.size else 0.0
    if worst > max_imag_k:
        raise SpectralParameterOutOfRange(
            f"|Im k_j| = {worst:.3g} exceeds the cap {max_imag_k}.",
            hint="Large imaginary quasi-momenta overflow exp(2 pi i k); reduce them or raise max_imag_k.",
        )


def _check_z(z: np.ndarray) -> None:
    if np.any(z == 0):
        raise ZeroSpectralParameter(f"Floquet multipliers must be non-zero, got {np.asarray(z).tolist()}.")


def _as_point(values: Sequence[complex], d: int) -> np.ndarray:
    point = np.asarray(values, dtype=np.complex128).reshape(-1)
    if point.shape[0] != d:
        raise ValueError(f"Expected a point with {d} coordinates, got {point.shape[0]}.")
    return point


def k_to_multipliers(k: np.ndarray, max_imag_k: float = DEFAULT_CONFIG.max_imag_k) -> np.ndarray:
    k = np.asarray(k, dtype=np.complex128)
    _check_k(k, max_imag_k)
    return np.exp(2j * np.pi * k)


def multipliers(lattice: PeriodLattice, points: np.ndarray, convention: PointConvention, config=DEFAULT_CONFIG):
    """Convert points in ``convention`` to hop multipliers ``w``."""
    points = np.asarray(points, dtype=np.complex128)
    if convention == PointConvention.K:
        return k_to_multipliers(points, config.max_imag_k)
    _check_z(points)
    if convention == PointConvention.Z:
        return points
    return points ** np.asarray(lattice.q)


def build_dv(V: Potential, k: Sequence[complex], *, max_imag_k: float = DEFAULT_CONFIG.max_imag_k) -> FloquetMatrix:
    """``D_V(k)`` for a quasi-momentum vector ``k``."""
    point = _as_point(k, V.lattice.d)
    entries = assemble(V, k_to_multipliers(point, max_imag_k))[0]
    return FloquetMatrix(V.lattice, entries, tuple(point), PointConvention.K)


def build_bloch(V: Potential, z: Sequence[complex]) -> FloquetMatrix:
    """``D_V`` expressed in the multipliers ``z_j = exp(2 pi i k_j)``."""
    point = _as_point(z, V.lattice.d)
    _check_z(point)
    return FloquetMatrix(V.lattice, assemble(V, point)[0], tuple(point), PointConvention.Z)


def build_dv_tilde(V: Potential, z: Sequence[complex]) -> FloquetMatrix:
    """``D_V`` at ``exp(2 pi i k_j) = z_j ** q_j``."""
    point = _as_point(z, V.lattice.d)
    _check_z(point)
    entries = assemble(V, point ** np.asarray(V.lattice.q))[0]
    return FloquetMatrix(V.lattice, entries, tuple(point), PointConvention.Z_TILDE)


def build_floquet_pair(V: Potential, z: Sequence[complex]) -> FloquetPair:
    """``A_z`` with entries ``sum_j (rho z_j + 1/(rho z_j))`` and ``B_V(n; n') = V^(n - n')``."""
    lattice = V.lattice
    point = _as_point(z, lattice.d)
    _check_z(point)
    scaled = lattice.roots * point[None, :]
    diagonal = np.sum(scaled + 1.0 / scaled, axis=1)
    B = dft(V).coeffs[lattice.sub_table]
    return FloquetPair(lattice, diagonal, B, tuple(point))


def determinant(M: np.ndarray) -> complex:
    """Determinant from an LU factorization with partial pivoting."""
    M = np.asarray(M, dtype=np.complex128)
    if M.shape[0] == 0:
        return 1.0 + 0j
    with warnings.catch_warnings():
        # lu_factor warns on an exactly zero pivot; the product below is then 0.
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(piv.shape[0])))
    return complex((-1) ** swaps * np.prod(np.diag(lu)))


def determinant_scale(M: np.ndarray) -> float:
    """Product of the row max-magnitudes, the natural scale for ``|det M|``."""
    return float(np.prod(np.max(np.abs(np.asarray(M)), axis=-1)))


def gershgorin_radius(M: np.ndarray) -> np.ndarray:
    """Largest absolute row sum; bounds the spectral radius. Works on stacks."""
    return np.max(np.sum(np.abs(np.asarray(M)), axis=-1), axis=-1)


def lambda_nodes(Q: int, radius: float) -> np.ndarray:
    t = np.arange(Q + 1)
    return radius * np.exp(2j * np.pi * t / (Q + 1))


def shifted_determinants(stack: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """``det(M_b - nodes[b, t] I)`` for a ``(B, Q, Q)`` stack and ``(B, N)`` nodes."""
    Q = stack.shape[-1]
    eye = np.eye(Q, dtype=np.complex128)
    shifted = stack[:, None, :, :] - nodes[:, :, None, None] * eye
    return np.linalg.det(shifted)


def coefficients_from_nodes(values: np.ndarray, radius: np.ndarray) -> np.ndarray:
    """Invert circle samples ``p(R w^t)`` into ascending coefficients of ``p``."""
    N = values.shape[-1]
    scaled = np.fft.fft(values, axis=-1) / N
    powers = np.asarray(radius, dtype=float)[..., None] ** np.arange(N)
    return scaled / powers


def charpoly_lambda(M: np.ndarray, radius: Optional[float] = None) -> np.ndarray:
    """Ascending coefficients ``c_0..c_Q`` of ``det(M - lambda I)``.

    The polynomial is sampled at ``Q + 1`` nodes on the circle of radius
    ``radius`` (default: Gershgorin bound plus one) and recovered by an
    inverse DFT; the leading coefficient is ``(-1)^Q``.
    """
    M = np.asarray(M, dtype=np.complex128)
    R = float(gershgorin_radius(M)) + 1.0 if radius is None else float(radius)
    nodes = lambda_nodes(M.shape[0], R)[None, :]
    values = shifted_determinants(M[None], nodes)
    return coefficients_from_nodes(values, np.array([R]))[0]


def evaluate_charpoly(coeffs: np.ndarray, lam: complex) -> complex:
    return complex(np.polynomial.polynomial.polyval(lam, coeffs))


def eigenvalues(M: np.ndarray, hermitian_tol: float = 1e-12) -> np.ndarray:
    """Full spectrum, sorted by (real, imag); Hermitian inputs use ``eigvalsh``."""
    M = np.asarray(M, dtype=np.complex128)
    if np.max(np.abs(M - M.conj().T), initial=0.0) <= hermitian_tol:
        values = scipy.linalg.eigvalsh(M, check_finite=False).astype(np.complex128)
    else:
        values = scipy.linalg.eigvals(M, check_finite=False)
    return np.sort_complex(values)


def spectral_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Worst gap of the optimal one-to-one matching of two spectra, relative to their size."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        return float("inf")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return float(np.max(cost[rows, cols])) / scale


@dataclass(frozen=True)
class EquivalenceResult:
    passed: bool
    max_deviation: float


def verify_unitary_equivalence(
    V: Potential, z: Sequence[complex], tol: float = DEFAULT_CONFIG.unitary_tol, *, pair: Optional[FloquetPair] = None
) -> EquivalenceResult:
    """Compare the spectra of ``D~_V(z)`` and ``A_z + B_V``.

    ``pair`` replaces the freshly built ``A_z + B_V`` (used to probe sensitivity).
    """
    tilde = build_dv_tilde(V, z)
    pair = pair if pair is not None else build_floquet_pair(V, z)
    deviation = spectral_deviation(eigenvalues(tilde.entries), eigenvalues(pair.matrix()))
    return EquivalenceResult(passed=deviation < tol, max_deviation=deviation)


def characteristic_values(
    V: Potential,
    points: np.ndarray,
    lam: complex,
    convention: PointConvention = PointConvention.K,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """``det(D - lam I)`` at every point of a ``(P, d)`` array."""
    lattice = V.lattice
    w = multipliers(lattice, np.asarray(points).reshape(-1, lattice.d), convention, config)
    eye = np.eye(lattice.Q, dtype=np.complex128)

    def kernel(chunk: np.ndarray) -> np.ndarray:
        return np.linalg.det(assemble(V, chunk) - complex(lam) * eye)

    return map_chunks(kernel, w, chunk_size=config.chunk_size, threads=config.threads)


def node_values(
    V: Potential,
    points: np.ndarray,
    radius: np.ndarray,
    convention: PointConvention = PointConvention.K,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """``det(D(point) - R_p w^t I)`` on the lambda circle, shape ``(P, Q + 1)``.

    ``radius`` holds one circle radius per point.
    """
    lattice = V.lattice
    w = multipliers(lattice, np.asarray(points).reshape(-1, lattice.d), convention, config)
    radius = np.broadcast_to(np.asarray(radius, dtype=float), (w.shape[0],))
    unit = lambda_nodes(lattice.Q, 1.0)
    # Each determinant call handles Q + 1 matrices per point.
    chunk = max(1, config.chunk_size // (lattice.Q + 1))

    def kernel(batch: np.ndarray) -> np.ndarray:
        stack = assemble(V, batch[:, : lattice.d])
        nodes = batch[:, lattice.d].real[:, None] * unit[None, :]
        return shifted_determinants(stack, nodes)

    packed = np.concatenate([w, radius[:, None].astype(np.complex128)], axis=1)
    return map_chunks(kernel, packed, chunk_size=chunk, threads=config.threads)


def floquet_radius(V: Potential) -> float:
    """Circle radius dominating the spectrum of ``D_V(k)`` at every real k."""
    return 2 * V.lattice.d + V.norm_inf() + 1.0


def fermi_evaluator(
    V: Potential, lam: complex, config: SpectralConfig = DEFAULT_CONFIG
) -> Callable[[np.ndarray], np.ndarray]:
    """Batched ``z -> det(D_V(z) - lam I)`` over ``(N, d)`` arrays of multipliers."""

    def evaluate(z: np.ndarray) -> np.ndarray:
        return characteristic_values(V, z, lam, PointConvention.Z, config)

    return evaluate
