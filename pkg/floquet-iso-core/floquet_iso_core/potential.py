# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Periodic potentials on the fundamental domain and their discrete Fourier transform.

Normalization is ``V^(l) = (1/Q) sum_n V(n) exp(-2 pi i sum_j l_j n_j / q_j)``
with no factor on the inverse, so the average of V is exactly ``V^(0)``.
The ``numpy.fft`` path is the default; ``dft_direct``/``idft_direct`` are the
O(Q^2) reference sums it is tested against.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, List, Literal, Sequence, Tuple, Union

import numpy as np

from floquet_iso_core.exceptions import PotentialFormatError
from floquet_iso_core.lattice import PeriodLattice
from floquet_iso_core.models import Pattern
from floquet_iso_core.rng import SplitMix64

logger = logging.getLogger(__name__)

PotentialKind = Literal["real", "complex"]

# Relative threshold for treating an inverse transform as real-valued.
_CONJUGATE_SYMMETRY_TOL = 1e-12


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=np.complex128).reshape(-1)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class Potential:
    """Values of a periodic potential on W, in ``index_of`` order."""

    lattice: PeriodLattice
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values)
        if values.shape[0] != self.lattice.Q:
            raise PotentialFormatError(
                f"Potential has {values.shape[0]} values; the lattice {list(self.lattice.q)} needs Q={self.lattice.Q}."
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, lattice: PeriodLattice, c: complex) -> "Potential":
        return cls(lattice, np.full(lattice.Q, complex(c)))

    @classmethod
    def from_function(cls, lattice: PeriodLattice, fn: Callable[[Tuple[int, ...]], complex]) -> "Potential":
        return cls(lattice, [fn(tuple(int(v) for v in n)) for n in lattice.multi_indices])

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0))

    def grid(self) -> np.ndarray:
        """Values reshaped to ``(q_1, ..., q_d)``."""
        return self.values.reshape(self.lattice.q)

    def evaluate_at(self, n: Sequence[int]) -> complex:
        """``V(n)`` for any integer vector, using periodicity."""
        return complex(self.values[self.lattice.linear_index(np.asarray(n))])

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def same_values(self, other: "Potential", atol: float = 0.0) -> bool:
        return self.lattice == other.lattice and bool(np.all(np.abs(self.values - other.values) <= atol))


@dataclass(frozen=True, eq=False)
class FourierTable:
    """Discrete Fourier coefficients ``V^(l)`` in ``index_of(l)`` order."""

    lattice: PeriodLattice
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _frozen(self.coeffs)
        if coeffs.shape[0] != self.lattice.Q:
            raise PotentialFormatError(
                f"Fourier table has {coeffs.shape[0]} entries; the lattice needs Q={self.lattice.Q}."
            )
        object.__setattr__(self, "coeffs", coeffs)

    def grid(self) -> np.ndarray:
        return self.coeffs.reshape(self.lattice.q)

    def at(self, l: Sequence[int]) -> complex:
        """``V^(l)`` with periodic extension in every coordinate."""
        return complex(self.coeffs[self.lattice.linear_index(np.asarray(l))])

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def is_conjugate_symmetric(self, rel_tol: float = _CONJUGATE_SYMMETRY_TOL) -> bool:
        """True when ``V^(-l) = conj(V^(l))``, i.e. the potential is real."""
        mirrored = self.coeffs[self.lattice.linear_index(-self.lattice.multi_indices)]
        gap = np.max(np.abs(mirrored - np.conj(self.coeffs))) if self.coeffs.size else 0.0
        return bool(gap <= rel_tol * max(self.norm_inf(), 1e-300))

    def masked(self, mask: np.ndarray) -> "FourierTable":
        """Keep the coefficients where ``mask`` (shape ``(Q,)``) is true, zero the rest."""
        return FourierTable(self.lattice, np.where(mask, self.coeffs, 0))


def _phase_matrix(lattice: PeriodLattice, sign: int) -> np.ndarray:
    n = lattice.multi_indices / np.asarray(lattice.q)
    return np.exp(sign * 2j * np.pi * (n @ lattice.multi_indices.T))


def dft_direct(V: Potential) -> FourierTable:
    """Reference O(Q^2) transform by explicit summation."""
    lattice = V.lattice
    return FourierTable(lattice, _phase_matrix(lattice, -1) @ V.values / lattice.Q)


def idft_direct(F: FourierTable) -> Potential:
    return Potential(F.lattice, _realify(F, _phase_matrix(F.lattice, +1) @ F.coeffs))


def dft(V: Potential) -> FourierTable:
    lattice = V.lattice
    coeffs = np.fft.fftn(V.grid()) / lattice.Q
    return FourierTable(lattice, coeffs.reshape(-1))


def idft(F: FourierTable) -> Potential:
    lattice = F.lattice
    values = np.fft.ifftn(F.grid()) * lattice.Q
    return Potential(lattice, _realify(F, values.reshape(-1)))


def _realify(F: FourierTable, values: np.ndarray) -> np.ndarray:
    if F.is_conjugate_symmetric():
        return values.real.astype(np.complex128)
    return values


def average(V: Potential) -> complex:
    """``[V]``, the mean over the fundamental domain."""
    return complex(np.mean(V.values))


@dataclass(frozen=True)
class Translate:
    m: Tuple[int, ...]


@dataclass(frozen=True)
class Reflect:
    pass


@dataclass(frozen=True)
class AddConstant:
    c: complex


TransformOp = Union[Translate, Reflect, AddConstant]


def transform(V: Potential, op: TransformOp) -> Potential:
    """``translate``: W(n)=V(n+m); ``reflect``: W(n)=V(-n); ``add_constant``: W(n)=V(n)+c."""
    lattice = V.lattice
    n = lattice.multi_indices
    if isinstance(op, Translate):
        if len(op.m) != lattice.d:
            raise PotentialFormatError(f"Translation {op.m} has {len(op.m)} entries; the lattice has d={lattice.d}.")
        return Potential(lattice, V.values[lattice.linear_index(n + np.asarray(op.m))])
    if isinstance(op, Reflect):
        return Potential(lattice, V.values[lattice.linear_index(-n)])
    if isinstance(op, AddConstant):
        c = complex(op.c)
        # Keep exact realness when the shift is real.
        return Potential(lattice, V.values + (c.real if c.imag == 0 else c))
    raise TypeError(f"Unsupported transform {op!r}")


def apply_recipe(V: Potential, recipe: Iterable[TransformOp]) -> Potential:
    for op in recipe:
        V = transform(V, op)
    return V


def parse_recipe(text: str) -> List[TransformOp]:
    """Parse ``"translate:1,0,0;reflect;shift:2,0"`` into transform ops.

    ``shift`` takes a complex scalar as ``re,im`` (or a bare real).
    """
    ops: List[TransformOp] = []
    for token in filter(None, (part.strip() for part in text.split(";"))):
        name, _, args = token.partition(":")
        name = name.strip().lower()
        try:
            if name == "translate":
                ops.append(Translate(tuple(int(v) for v in args.split(","))))
            elif name == "reflect":
                ops.append(Reflect())
            elif name in ("shift", "add_constant"):
                ops.append(AddConstant(parse_complex(args)))
            else:
                raise PotentialFormatError(f"Unknown transform '{name}' in recipe '{text}'.")
        except ValueError as e:
            raise PotentialFormatError(f"Cannot parse transform '{token}': {e}") from e
    return ops


def parse_complex(text: str) -> complex:
    """``"re,im"`` or a bare real ``"re"``."""
    parts = [part.strip() for part in str(text).split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected 're' or 're,im', got '{text}'")


def _draw(stream: SplitMix64, size: int, kind: PotentialKind) -> np.ndarray:
    if kind == "real":
        return stream.uniform(-1.0, 1.0, size).astype(np.complex128)
    if kind == "complex":
        pairs = stream.uniform(0.0, 1.0, 2 * size).reshape(size, 2)
        return pairs[:, 0] + 1j * pairs[:, 1]
    raise ValueError(f"kind must be 'real' or 'complex', got {kind!r}")


def random_potential(lattice: PeriodLattice, seed: int, kind: PotentialKind = "real") -> Potential:
    """I.i.d. entries, uniform on [-1, 1] (real) or on the unit square [0, 1)^2 (complex)."""
    return Potential(lattice, _draw(SplitMix64(seed), lattice.Q, kind))


def embed(values: np.ndarray, support: Sequence[int], lattice: PeriodLattice) -> np.ndarray:
    """Lift a function of the coordinates in ``support`` (0-based, ascending) to all of W."""
    support = tuple(support)
    shape = [lattice.q[axis] if axis in support else 1 for axis in range(lattice.d)]
    lifted = np.asarray(values, dtype=np.complex128).reshape(shape)
    return np.broadcast_to(lifted, lattice.q).reshape(-1).copy()


def restrict(values: np.ndarray, support: Sequence[int], lattice: PeriodLattice) -> np.ndarray:
    """Slice a full-domain function at ``n_j = 0`` for every axis outside ``support``."""
    index = tuple(slice(None) if axis in support else 0 for axis in range(lattice.d))
    return np.asarray(values).reshape(lattice.q)[index].reshape(-1).copy()


def random_separable(
    lattice: PeriodLattice, pattern: Pattern, seed: int, kind: PotentialKind = "real"
) -> Potential:
    """Sum of random component functions on the supports of ``pattern``."""
    pattern.validate_for(lattice)
    stream = SplitMix64(seed)
    total = np.zeros(lattice.Q, dtype=np.complex128)
    for support in pattern.supports(lattice.d):
        sub = lattice.restrict(support)
        total += embed(_draw(stream, sub.Q, kind), support, lattice)
    logger.debug(f"Drew {pattern.to_text()}-separable potential on {list(lattice.q)} with seed {seed}")
    return Potential(lattice, total)
