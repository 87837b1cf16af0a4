# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""floquet-iso-core: spectral machinery for periodic lattice Schrödinger operators."""

from floquet_iso_core.config import DEFAULT_CONFIG, SpectralConfig, load_config
from floquet_iso_core.exceptions import (
    BadBlock,
    BadCoordinate,
    BadPattern,
    BadSpec,
    ConfigError,
    CoprimalityViolation,
    DegreeBoundViolation,
    EmptyPeriods,
    FloquetIsoException,
    LatticeMismatch,
    NotSeparable,
    OutOfRange,
    PotentialFormatError,
    SpectralParameterOutOfRange,
    SupportMismatch,
    VariableMismatch,
    ZeroPoint,
    ZeroSpectralParameter,
)
from floquet_iso_core.floquet import (
    FloquetMatrix,
    FloquetPair,
    build_bloch,
    build_dv,
    build_dv_tilde,
    build_floquet_pair,
    charpoly_lambda,
    determinant,
    eigenvalues,
    verify_unitary_equivalence,
)
from floquet_iso_core.isospectral import (
    certify,
    certify_fermi,
    certify_floquet,
    certify_partial,
    derive_lambda2,
    make_isospectral_partner,
)
from floquet_iso_core.laurent import (
    LaurentPoly,
    equal_within,
    fermi_polynomial,
    interpolate_from_samples,
    randomized_identity_test,
)
from floquet_iso_core.lattice import BlockPartition, PeriodLattice, new_lattice
from floquet_iso_core.models import IsoMode, IsoReport, IsoSpec, Pattern, SeparabilityReport, Verdict
from floquet_iso_core.potential import (
    AddConstant,
    FourierTable,
    Potential,
    Reflect,
    Translate,
    average,
    dft,
    idft,
    random_potential,
    random_separable,
    transform,
)
from floquet_iso_core.separability import Decomposition, check, decompose, verify_decomposition

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DEFAULT_CONFIG",
    "SpectralConfig",
    "load_config",
    "FloquetIsoException",
    "BadBlock",
    "BadCoordinate",
    "BadPattern",
    "BadSpec",
    "ConfigError",
    "CoprimalityViolation",
    "DegreeBoundViolation",
    "EmptyPeriods",
    "LatticeMismatch",
    "NotSeparable",
    "OutOfRange",
    "PotentialFormatError",
    "SpectralParameterOutOfRange",
    "SupportMismatch",
    "VariableMismatch",
    "ZeroPoint",
    "ZeroSpectralParameter",
    "PeriodLattice",
    "BlockPartition",
    "new_lattice",
    "Potential",
    "FourierTable",
    "Translate",
    "Reflect",
    "AddConstant",
    "dft",
    "idft",
    "average",
    "transform",
    "random_potential",
    "random_separable",
    "FloquetMatrix",
    "FloquetPair",
    "build_dv",
    "build_bloch",
    "build_dv_tilde",
    "build_floquet_pair",
    "determinant",
    "charpoly_lambda",
    "eigenvalues",
    "verify_unitary_equivalence",
    "LaurentPoly",
    "interpolate_from_samples",
    "equal_within",
    "randomized_identity_test",
    "fermi_polynomial",
    "Pattern",
    "SeparabilityReport",
    "Decomposition",
    "check",
    "decompose",
    "verify_decomposition",
    "IsoMode",
    "IsoSpec",
    "IsoReport",
    "Verdict",
    "certify",
    "certify_fermi",
    "certify_floquet",
    "certify_partial",
    "derive_lambda2",
    "make_isospectral_partner",
]
