# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Verification errors.

A failed premise is not a failed theorem: checks raise :class:`PremiseFailed`
instead of reporting FAIL whenever the isospectrality claim they build on does
not certify, so no conclusion is ever asserted vacuously.
"""

from __future__ import annotations

from typing import Optional

from floquet_iso_core.exceptions import FloquetIsoException


class VerificationError(FloquetIsoException):
    """Base class for harness errors."""


class PremiseFailed(VerificationError):
    """The premise of a check did not certify; ``report`` is the failing certification."""

    def __init__(self, message: str, report=None, *, hint: Optional[str] = None):
        self.report = report
        super().__init__(message, hint=hint)


class HypothesisViolation(VerificationError):
    """Structural hypotheses (dimension, #S, realness, block sizes) do not hold."""


class DegenerateSampling(VerificationError):
    """Random sampling kept landing on a denominator zero set."""


class VerificationNotFound(VerificationError):
    """No verification check is registered under the requested name."""
