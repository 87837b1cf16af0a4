# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Report models for the verification harness."""

from __future__ import annotations

from enum import Enum
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from floquet_iso_core.models import IsoReport, SeparabilityReport, Verdict, complex_pair


def jsonable(value: Any) -> Any:
    """Convert a dumped model tree to JSON-ready values; complex scalars become ``[re, im]``."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, complex):
        return complex_pair(value)
    if isinstance(value, BaseModel):
        return value.to_json_dict() if hasattr(value, "to_json_dict") else jsonable(value.model_dump())
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    return value


class VerificationReport(BaseModel):
    """Common fields of every harness report."""

    check: str = Field(..., description="Registered name of the check")
    verdict: Verdict
    tol: float

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_json_dict(self) -> Dict[str, Any]:
        return {name: jsonable(getattr(self, name)) for name in type(self).model_fields}


class AverageShiftReport(VerificationReport):
    check: str = "avg-shift"
    premise: IsoReport
    mean_v: complex
    mean_y: complex
    lambda1: complex
    lambda2: complex
    residual: float = Field(..., description="|([V]-[Y]) - (lambda1-lambda2)|")


class SumIdentityReport(VerificationReport):
    check: str = "sum-identity"
    premise: IsoReport
    samples: int
    resamples: int = Field(0, description="Draws rejected by the denominator guard")
    max_rel_gap: float
    seed: int


class ModeMassReport(VerificationReport):
    check: str = "mode-mass"
    premise: IsoReport
    triple: List[int] = Field(..., description="1-based coordinates whose frequency classes are compared")
    classes_checked: int
    max_gap: float = Field(..., description="Worst class mass difference relative to the total mass")
    worst_class: Optional[List[int]] = None


class CoprimeReport(VerificationReport):
    check: str = "coprime-det"
    periods: List[int]
    tuples: int
    vanishing: int
    unclassified: int = Field(..., description="Vanishing tuples that match no case")
    classified_nonvanishing: int = Field(..., description="Tuples matching a case whose determinant is not zero")
    case_counts: Dict[str, int]
    min_nonzero: float = Field(..., description="Smallest |det| over the non-vanishing tuples")
    examples: List[List[int]] = Field(default_factory=list, description="First offending (l, l') tuples")


class PremiseEntry(BaseModel):
    pairs: List[List[int]] = Field(..., description="Required (s, t) pairs covered by this premise")
    report: IsoReport

    def to_json_dict(self) -> Dict[str, Any]:
        return {"pairs": [list(p) for p in self.pairs], "report": self.report.to_json_dict()}


class TransferReport(VerificationReport):
    check: str = "transfer"
    pattern: str
    lambda1: complex
    lambda2: complex
    premises: List[PremiseEntry]
    separability: SeparabilityReport


class AmbarzumianEntry(BaseModel):
    lambda1: complex
    lambda2: complex
    certified: bool
    max_rel_dev: float

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "lambda1": complex_pair(self.lambda1),
            "lambda2": complex_pair(self.lambda2),
            "certified": self.certified,
            "max_rel_dev": self.max_rel_dev,
        }


class AmbarzumianReport(VerificationReport):
    check: str = "ambarzumian"
    target: Literal["mean", "zero"]
    S: List[int]
    entries: List[AmbarzumianEntry]
    constancy_residual: float = Field(..., description="max |V - [V]| (mean target) or max |V| (zero target)")
    any_certified: bool


class CorrectorValues(BaseModel):
    offset: complex = Field(..., description="The constant u = -[V] folded into the corrector")
    values: List[complex] = Field(..., description="U_j on the shared block, row-major")

    def to_json_dict(self) -> Dict[str, Any]:
        return {"offset": complex_pair(self.offset), "values": [complex_pair(v) for v in self.values]}


class ComponentEntry(BaseModel):
    index: int = Field(..., description="1-based summand index")
    support: List[int] = Field(..., description="1-based coordinates of the component sub-lattice")
    v_corrector: CorrectorValues
    y_corrector: CorrectorValues
    report: IsoReport

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "support": list(self.support),
            "v_corrector": self.v_corrector.to_json_dict(),
            "y_corrector": self.y_corrector.to_json_dict(),
            "report": self.report.to_json_dict(),
        }


class ComponentFloquetReport(VerificationReport):
    check: str = "component-floquet"
    pattern: str
    premise: IsoReport
    premise_method: str = Field(..., description="'randomized' (degraded) or 'certified-grid'")
    normalization_residual: float = Field(..., description="Largest |mean| of a corrected component")
    components: List[ComponentEntry]
