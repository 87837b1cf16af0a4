# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Typed claims and reports: separability patterns, isospectrality specs and verdicts."""

from __future__ import annotations

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from floquet_iso_core.exceptions import BadPattern, BadSpec
from floquet_iso_core.lattice import BlockPartition, PeriodLattice


def complex_pair(value: Optional[complex]) -> Optional[List[float]]:
    """Serialize a complex scalar as ``[re, im]``."""
    if value is None:
        return None
    value = complex(value)
    return [float(value.real), float(value.imag)]


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class PatternKind(str, Enum):
    PAIR = "pair"
    BLOCKS = "blocks"
    OPLUS = "oplus"


class Pattern(BaseModel):
    """A separability pattern.

    ``pair`` uses the 1-based coordinates ``s < t``; ``blocks`` uses ``sizes``
    summing to d; ``oplus`` uses ``sizes`` for the summand blocks and
    ``shared`` for the trailing block every summand depends on.
    """

    kind: PatternKind = Field(..., description="Pattern family")
    s: Optional[int] = Field(None, description="First coordinate of a pair pattern (1-based)")
    t: Optional[int] = Field(None, description="Second coordinate of a pair pattern (1-based)")
    sizes: List[int] = Field(default_factory=list, description="Block sizes d_1..d_r (summand blocks for oplus)")
    shared: Optional[int] = Field(None, description="Size d_r of the shared block of an oplus pattern")

    @model_validator(mode="after")
    def _check_shape(self) -> "Pattern":
        if self.kind == PatternKind.PAIR:
            if self.s is None or self.t is None or not 1 <= self.s < self.t:
                raise ValueError(f"pair pattern needs 1 <= s < t, got s={self.s}, t={self.t}")
        elif self.kind == PatternKind.BLOCKS:
            if len(self.sizes) < 2 or any(size < 1 for size in self.sizes):
                raise ValueError(f"blocks pattern needs at least two positive sizes, got {self.sizes}")
        else:
            if len(self.sizes) < 2 or any(size < 1 for size in self.sizes):
                raise ValueError(f"oplus pattern needs at least two positive summand sizes, got {self.sizes}")
            if self.shared is None or self.shared < 1:
                raise ValueError(f"oplus pattern needs a positive shared block size, got {self.shared}")
        return self

    @classmethod
    def pair(cls, s: int, t: int) -> "Pattern":
        return cls._build(kind=PatternKind.PAIR, s=s, t=t)

    @classmethod
    def blocks(cls, sizes: List[int]) -> "Pattern":
        return cls._build(kind=PatternKind.BLOCKS, sizes=list(sizes))

    @classmethod
    def oplus(cls, sizes: List[int], shared: int) -> "Pattern":
        return cls._build(kind=PatternKind.OPLUS, sizes=list(sizes), shared=shared)

    @classmethod
    def _build(cls, **fields: Any) -> "Pattern":
        try:
            return cls(**fields)
        except ValueError as e:
            raise BadPattern(f"Invalid pattern {fields}: {e}") from e

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Parse ``pair:s,t``, ``blocks:d1+...+dr`` or ``oplus:d1+...+d_{r-1}|dr``."""
        kind, sep, body = text.strip().partition(":")
        if not sep:
            raise BadPattern(f"Pattern '{text}' has no kind prefix.", hint="Use pair:, blocks: or oplus:.")
        kind = kind.strip().lower()
        try:
            if kind == "pair":
                s, t = (int(part) for part in body.split(","))
                return cls.pair(s, t)
            if kind == "blocks":
                return cls.blocks([int(part) for part in body.split("+")])
            if kind == "oplus":
                summands, bar, shared = body.partition("|")
                if not bar:
                    raise BadPattern(f"oplus pattern '{text}' is missing the '|dr' shared block.")
                return cls.oplus([int(part) for part in summands.split("+")], int(shared))
        except ValueError as e:
            raise BadPattern(f"Cannot parse pattern '{text}': {e}") from e
        raise BadPattern(f"Unknown pattern kind '{kind}'.", hint="Use pair:, blocks: or oplus:.")

    def to_text(self) -> str:
        if self.kind == PatternKind.PAIR:
            return f"pair:{self.s},{self.t}"
        if self.kind == PatternKind.BLOCKS:
            return "blocks:" + "+".join(str(size) for size in self.sizes)
        return "oplus:" + "+".join(str(size) for size in self.sizes) + f"|{self.shared}"

    def dimension(self) -> Optional[int]:
        """Number of coordinates the pattern covers; ``None`` for pairs."""
        if self.kind == PatternKind.BLOCKS:
            return sum(self.sizes)
        if self.kind == PatternKind.OPLUS:
            return sum(self.sizes) + self.shared
        return None

    def validate_for(self, lattice: PeriodLattice) -> None:
        if self.kind == PatternKind.PAIR:
            if self.t > lattice.d:
                raise BadPattern(f"Pattern {self.to_text()} needs d >= {self.t}, lattice has d={lattice.d}.")
            return
        if self.dimension() != lattice.d:
            raise BadPattern(
                f"Pattern {self.to_text()} covers {self.dimension()} coordinates, lattice has d={lattice.d}."
            )

    def partition(self) -> BlockPartition:
        """All blocks in coordinate order; the shared block is last for oplus."""
        if self.kind == PatternKind.PAIR:
            raise BadPattern("Pair patterns have no block partition.")
        sizes = list(self.sizes) + ([self.shared] if self.kind == PatternKind.OPLUS else [])
        return BlockPartition(tuple(sizes))

    def supports(self, d: int) -> List[Tuple[int, ...]]:
        """0-based coordinate supports of the summands, in decomposition order.

        For ``pair:s,t`` these are the supports of ``V_s`` (all but t) and
        ``V_t`` (all but s); for ``oplus`` each summand block joined with the
        shared block.
        """
        if self.kind == PatternKind.PAIR:
            return [
                tuple(axis for axis in range(d) if axis != self.t - 1),
                tuple(axis for axis in range(d) if axis != self.s - 1),
            ]
        blocks = self.partition().blocks
        if self.kind == PatternKind.BLOCKS:
            return list(blocks)
        shared = blocks[-1]
        return [block + shared for block in blocks[:-1]]

    def required_pairs(self) -> List[Tuple[int, int]]:
        """1-based coordinate pairs whose mixed Fourier modes must vanish."""
        if self.kind == PatternKind.PAIR:
            return [(self.s, self.t)]
        blocks = self.partition().blocks[: len(self.sizes)]
        pairs = []
        for i, block_i in enumerate(blocks):
            for block_m in blocks[i + 1 :]:
                pairs.extend((s + 1, t + 1) for s in block_i for t in block_m)
        return pairs


class SeparabilityReport(BaseModel):
    """Outcome of a Fourier separability check."""

    verdict: Verdict
    pattern: str
    worst_coefficient: float = Field(0.0, description="Largest |V^(l)| over the forbidden modes")
    worst_index: Optional[List[int]] = Field(None, description="Mode l attaining the worst coefficient")
    worst_pair: Optional[List[int]] = Field(None, description="Coordinate pair the worst mode violates")
    scale: float = Field(0.0, description="Largest |V^(l)| over all modes")
    tol: float

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class IsoMode(str, Enum):
    FLOQUET = "floquet"
    FERMI = "fermi"
    PARTIAL_FERMI = "partial_fermi"
    GENERALIZED_PARTIAL_FERMI = "generalized_partial_fermi"
    GENERALIZED_FERMI = "generalized_fermi"


class CertMethod(str, Enum):
    CERTIFIED_GRID = "certified-grid"
    RANDOMIZED = "randomized"


_SAME_LAMBDA_MODES = {IsoMode.FERMI, IsoMode.PARTIAL_FERMI}
_FULL_S_MODES = {IsoMode.FLOQUET, IsoMode.FERMI, IsoMode.GENERALIZED_FERMI}
PARTIAL_MODES = {IsoMode.PARTIAL_FERMI, IsoMode.GENERALIZED_PARTIAL_FERMI, IsoMode.GENERALIZED_FERMI}


class IsoSpec(BaseModel):
    """An isospectrality claim ``P_V(k, lambda1) = P_Y(k, lambda2)`` over the coordinates in ``S``."""

    mode: IsoMode
    lambda1: complex = Field(0j, description="Energy for V (unused for floquet)")
    lambda2: Optional[complex] = Field(None, description="Energy for Y; forced to lambda1 for fermi modes")
    S: List[int] = Field(default_factory=list, description="Free quasi-momentum coordinates (1-based)")
    fixed_k: Dict[int, float] = Field(default_factory=dict, description="Frozen k_j for j outside S")

    @model_validator(mode="after")
    def _normalize(self) -> "IsoSpec":
        if self.lambda2 is None:
            self.lambda2 = self.lambda1
        self.S = sorted(set(self.S))
        return self

    @classmethod
    def floquet(cls, d: int) -> "IsoSpec":
        return cls(mode=IsoMode.FLOQUET, S=list(range(1, d + 1)))

    @classmethod
    def fermi(cls, lam: complex, d: int) -> "IsoSpec":
        return cls(mode=IsoMode.FERMI, lambda1=lam, S=list(range(1, d + 1)))

    @classmethod
    def generalized_fermi(cls, lambda1: complex, lambda2: complex, d: int) -> "IsoSpec":
        return cls(mode=IsoMode.GENERALIZED_FERMI, lambda1=lambda1, lambda2=lambda2, S=list(range(1, d + 1)))

    def validate_for(self, lattice: PeriodLattice) -> Dict[int, float]:
        """Check the claim against a lattice; return the frozen ``k_j*`` for every ``j`` outside S."""
        d = lattice.d
        if not self.S:
            raise BadSpec("S must be non-empty.")
        if self.S[0] < 1 or self.S[-1] > d:
            raise BadSpec(f"S={self.S} is not a subset of 1..{d}.")
        if self.mode in _FULL_S_MODES and len(self.S) != d:
            raise BadSpec(f"Mode {self.mode.value} quantifies over every coordinate; got S={self.S} with d={d}.")
        if self.mode in _SAME_LAMBDA_MODES and complex(self.lambda2) != complex(self.lambda1):
            raise BadSpec(
                f"Mode {self.mode.value} needs lambda2 = lambda1, got {self.lambda1} and {self.lambda2}.",
                hint="Use generalized_partial_fermi or generalized_fermi for distinct energies.",
            )
        complement = [j for j in range(1, d + 1) if j not in self.S]
        unexpected = sorted(set(self.fixed_k) - set(complement))
        if unexpected:
            raise BadSpec(f"fixed_k names coordinates {unexpected} that are not outside S={self.S}.")
        return {j: float(self.fixed_k.get(j, 0.0)) for j in complement}

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode.value,
            "S": list(self.S),
            "lambda1": complex_pair(self.lambda1),
            "lambda2": complex_pair(self.lambda2),
            "fixed_k": {str(j): k for j, k in sorted(self.fixed_k.items())},
        }


class IsoReport(BaseModel):
    """Result of certifying an :class:`IsoSpec`."""

    verdict: Verdict
    mode: IsoMode
    S: List[int]
    lambda1: Optional[complex] = None
    lambda2: Optional[complex] = None
    fixed_k: Dict[int, float] = Field(default_factory=dict)
    method: CertMethod
    max_rel_dev: float = Field(..., description="Worst relative deviation over the grid or trial points")
    max_coeff_dev: Optional[float] = Field(
        None, description="Worst lambda-coefficient gap relative to 1 + max |coefficient| (floquet claims)"
    )
    mean_shift_residual: Optional[float] = Field(
        None, description="|([V] - [Y]) - (lambda1 - lambda2)| for certified claims with #S >= 2"
    )
    reason: Optional[str] = Field(None, description="Why a grid agreement was still rejected")
    grid: List[int] = Field(default_factory=list, description="Grid size per free coordinate")
    trials: Optional[int] = Field(None, description="Random points used by the randomized method")
    seed: Optional[int] = None
    tol: float

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "mode": self.mode.value,
            "S": list(self.S),
            "lambda1": complex_pair(self.lambda1),
            "lambda2": complex_pair(self.lambda2),
            "fixed_k": {str(j): k for j, k in sorted(self.fixed_k.items())},
            "method": self.method.value,
            "max_rel_dev": self.max_rel_dev,
            "max_coeff_dev": self.max_coeff_dev,
            "mean_shift_residual": self.mean_shift_residual,
            "reason": self.reason,
            "grid": list(self.grid),
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
        }
