# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Numerical configuration shared by certification, interpolation and the harness."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from floquet_iso_core.exceptions import ConfigError

logger = logging.getLogger(__name__)


class SpectralConfig(BaseModel):
    """Tolerances, sampling sizes and parallelism knobs."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    tol: float = Field(default=1e-8, gt=0, description="Relative tolerance for isospectrality certification")
    separability_tol: float = Field(
        default=1e-10, gt=0, description="Fourier-coefficient tolerance relative to the largest coefficient"
    )
    unitary_tol: float = Field(default=1e-8, gt=0, description="Eigenvalue matching tolerance for A_z+B_V checks")
    residual_tol: float = Field(default=1e-8, gt=0, description="Fresh-point residual tolerance for interpolation")
    residual_points: int = Field(default=20, ge=1, description="Fresh torus points used to validate an interpolant")
    randomized_trials: int = Field(default=64, ge=1, description="Torus points drawn by randomized identity tests")
    premise_trials: int = Field(default=8, ge=1, description="Torus points used for randomized premise checks")
    threads: int = Field(default=1, ge=1, description="Worker threads for grid evaluation")
    chunk_size: int = Field(default=256, ge=1, description="Matrices per batched determinant call")
    seed: int = Field(default=0, ge=0, description="Seed for every randomized procedure")
    max_imag_k: float = Field(default=10.0, gt=0, description="Cap on |Im k_j| accepted by matrix builders")
    denominator_guard: float = Field(
        default=1e-6, gt=0, description="Minimum denominator magnitude accepted when sampling the sum identity"
    )
    max_resamples: int = Field(default=100, ge=1, description="Redraws allowed per degenerate sample")
    grid_phase: float = Field(
        default=0.123456789, description="Global phase (in turns) applied to interpolation grid nodes"
    )

    def with_overrides(self, **overrides: Any) -> "SpectralConfig":
        """Return a copy with the non-None overrides applied and re-validated."""
        data = self.model_dump()
        data.update({key: value for key, value in overrides.items() if value is not None})
        return SpectralConfig(**data)


DEFAULT_CONFIG = SpectralConfig()


def load_config(path: Optional[Union[str, Path]]) -> SpectralConfig:
    """Load a :class:`SpectralConfig` from a YAML file; ``None`` yields the defaults."""
    if path is None:
        return DEFAULT_CONFIG
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"Config file not found: {path}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Config file {path} is not valid YAML: {e}") from e

    data: Dict[str, Any] = raw or {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must contain a mapping, got {type(data).__name__}")
    try:
        config = SpectralConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid config in {path}: {e}", hint="See SpectralConfig for accepted keys.") from e
    logger.debug(f"Loaded spectral config from {path}")
    return config
