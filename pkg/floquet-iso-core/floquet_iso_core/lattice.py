# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Period lattices, fundamental-domain indexing and coordinate block partitions.

Multi-indices are laid out row-major with ``n_1`` slowest and ``n_d`` fastest,
which is also numpy's C order for an array of shape ``(q_1, ..., q_d)``. All
file formats and matrices in this package use that layout.

Coordinates are 1-based wherever a caller names them (``root_of_unity``,
patterns, block numbers); array axes are 0-based internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, Tuple

import numpy as np

from floquet_iso_core.exceptions import (
    BadBlock,
    BadCoordinate,
    CoprimalityViolation,
    EmptyPeriods,
    OutOfRange,
)


@dataclass(frozen=True)
class PeriodLattice:
    """The lattice ``q_1 Z + ... + q_d Z`` with pairwise coprime periods."""

    q: Tuple[int, ...]

    def __post_init__(self):
        periods = tuple(int(p) for p in self.q)
        object.__setattr__(self, "q", periods)
        if not periods:
            raise EmptyPeriods("At least one period is required.")
        for p in periods:
            if p < 1:
                raise OutOfRange(f"Periods must be positive integers, got {p}.")
        for (i, a), (j, b) in combinations(enumerate(periods, start=1), 2):
            if math.gcd(a, b) != 1:
                raise CoprimalityViolation(
                    f"Periods q_{i}={a} and q_{j}={b} share the factor {math.gcd(a, b)}.",
                    hint="Every pair of periods must be coprime.",
                )

    @property
    def d(self) -> int:
        return len(self.q)

    @property
    def Q(self) -> int:
        return math.prod(self.q)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.q

    def index_of(self, n: Sequence[int]) -> int:
        """Row-major linear index of a multi-index in the fundamental domain."""
        n = tuple(int(v) for v in n)
        if len(n) != self.d:
            raise OutOfRange(f"Multi-index {n} has {len(n)} entries; the lattice has d={self.d}.")
        idx = 0
        for j, (v, p) in enumerate(zip(n, self.q), start=1):
            if not 0 <= v < p:
                raise OutOfRange(f"Coordinate n_{j}={v} is outside [0, {p}).")
            idx = idx * p + v
        return idx

    def multi_index_of(self, idx: int) -> Tuple[int, ...]:
        if not 0 <= idx < self.Q:
            raise OutOfRange(f"Index {idx} is outside [0, {self.Q}).")
        return tuple(int(v) for v in np.unravel_index(idx, self.q))

    def reduce(self, n: Sequence[int]) -> Tuple[int, ...]:
        """Reduce an arbitrary integer vector into the fundamental domain."""
        if len(n) != self.d:
            raise OutOfRange(f"Vector {tuple(n)} has {len(n)} entries; the lattice has d={self.d}.")
        return tuple(int(v) % p for v, p in zip(n, self.q))

    def root_of_unity(self, j: int, m: int) -> complex:
        """``exp(2 pi i (m mod q_j) / q_j)`` for the 1-based coordinate ``j``."""
        if not 1 <= j <= self.d:
            raise BadCoordinate(f"Coordinate {j} is outside 1..{self.d}.")
        p = self.q[j - 1]
        return complex(np.exp(2j * np.pi * (int(m) % p) / p))

    @cached_property
    def multi_indices(self) -> np.ndarray:
        """All multi-indices as a ``(Q, d)`` integer array in linear-index order."""
        grid = np.indices(self.q).reshape(self.d, -1).T
        grid.setflags(write=False)
        return grid

    @cached_property
    def roots(self) -> np.ndarray:
        """``roots[idx, j] = rho^j_{n_j}`` for every site, a ``(Q, d)`` complex array."""
        periods = np.asarray(self.q)
        table = np.exp(2j * np.pi * self.multi_indices / periods)
        table.setflags(write=False)
        return table

    def linear_index(self, n: np.ndarray) -> np.ndarray:
        """Vectorized ``index_of`` for integer arrays of shape ``(..., d)``; reduces mod q."""
        n = np.asarray(n, dtype=np.int64) % np.asarray(self.q)
        return np.ravel_multi_index(tuple(np.moveaxis(n, -1, 0)), self.q)

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[a, b] = index_of(n_a + n_b mod q)``."""
        n = self.multi_indices
        table = self.linear_index(n[:, None, :] + n[None, :, :])
        table.setflags(write=False)
        return table

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``sub_table[a, b] = index_of(n_a - n_b mod q)``."""
        n = self.multi_indices
        table = self.linear_index(n[:, None, :] - n[None, :, :])
        table.setflags(write=False)
        return table

    def restrict(self, support: Iterable[int]) -> "PeriodLattice":
        """Sub-lattice on the given 0-based coordinates, in coordinate order."""
        support = tuple(support)
        for axis in support:
            if not 0 <= axis < self.d:
                raise BadCoordinate(f"Axis {axis} is outside 0..{self.d - 1}.")
        return PeriodLattice(tuple(self.q[axis] for axis in sorted(support)))

    def to_json_dict(self) -> dict:
        return {"periods": list(self.q), "d": self.d, "Q": self.Q}


def new_lattice(q: Sequence[int]) -> PeriodLattice:
    """Validate ``q`` and build the lattice."""
    if q is None or len(q) == 0:
        raise EmptyPeriods("At least one period is required.")
    return PeriodLattice(tuple(q))


@dataclass(frozen=True)
class BlockPartition:
    """Contiguous coordinate blocks of sizes ``d_1, ..., d_r``."""

    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if not sizes:
            raise BadBlock("A block partition needs at least one block.")
        if any(s < 1 for s in sizes):
            raise BadBlock(f"Block sizes must be positive, got {list(sizes)}.")

    @property
    def d(self) -> int:
        return sum(self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    @cached_property
    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """0-based coordinate groups, one tuple per block."""
        groups = []
        start = 0
        for size in self.sizes:
            groups.append(tuple(range(start, start + size)))
            start += size
        return tuple(groups)

    def block_project(self, n: Sequence[int], m: int) -> Tuple[int, ...]:
        """Coordinates of ``n`` in the 1-based block ``m``."""
        if not 1 <= m <= self.r:
            raise BadBlock(f"Block {m} is outside 1..{self.r}.")
        if len(n) != self.d:
            raise OutOfRange(f"Multi-index {tuple(n)} has {len(n)} entries; the partition covers d={self.d}.")
        return tuple(int(n[axis]) for axis in self.blocks[m - 1])
