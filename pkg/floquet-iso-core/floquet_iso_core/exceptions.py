# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Exceptions for floquet-iso-core.

Every error names the offending input and, where a concrete remediation
exists, carries it as ``hint`` so CLI callers can print one actionable line.
"""

from __future__ import annotations

from typing import Optional


class FloquetIsoException(Exception):
    """Base exception for floquet-iso-core."""

    def __init__(self, message: str, *, hint: Optional[str] = None):
        self.hint = hint
        parts = [message]
        if hint:
            parts.append(f"Hint: {hint}")
        super().__init__(" ".join(parts))


class EmptyPeriods(FloquetIsoException):
    """A lattice was requested with no periods."""


class CoprimalityViolation(FloquetIsoException):
    """Two periods share a common factor."""


class OutOfRange(FloquetIsoException):
    """A multi-index or linear index falls outside the fundamental domain."""


class BadCoordinate(FloquetIsoException):
    """A 1-based coordinate number is outside ``1..d``."""


class BadBlock(FloquetIsoException):
    """A block index is outside ``1..r``."""


class BadPattern(FloquetIsoException):
    """A separability pattern is malformed or does not fit the lattice."""


class ZeroSpectralParameter(FloquetIsoException):
    """A Floquet multiplier ``z_j`` is zero."""


class SpectralParameterOutOfRange(FloquetIsoException):
    """A quasi-momentum has an imaginary part beyond the supported cap."""


class DegreeBoundViolation(FloquetIsoException):
    """An interpolated evaluator is not a Laurent polynomial within its bounds."""


class ZeroPoint(FloquetIsoException):
    """A Laurent polynomial was evaluated at a point with a zero coordinate."""


class VariableMismatch(FloquetIsoException):
    """Two Laurent polynomials have different variable counts."""


class NotSeparable(FloquetIsoException):
    """A potential fails the separability check required by an operation."""


class SupportMismatch(FloquetIsoException):
    """A decomposition component does not fit the potential's lattice."""


class LatticeMismatch(FloquetIsoException):
    """Two potentials live on different period lattices."""


class BadSpec(FloquetIsoException):
    """An isospectrality claim is inconsistent or does not fit the lattice."""


class PotentialFormatError(FloquetIsoException):
    """A potential file is malformed."""


class ConfigError(FloquetIsoException):
    """A configuration file cannot be read or validated."""
