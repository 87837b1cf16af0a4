# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Shared lattices, seeded potentials and registry cleanup."""

from __future__ import annotations

import pytest

from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.potential import random_potential
from floquet_iso_verify import register


@pytest.fixture(scope="session")
def lat23():
    return new_lattice([2, 3])


@pytest.fixture(scope="session")
def lat235():
    return new_lattice([2, 3, 5])


@pytest.fixture(scope="session")
def lat2357():
    return new_lattice([2, 3, 5, 7])


@pytest.fixture(scope="session")
def real_v(lat235):
    return random_potential(lat235, 42, "real")


@pytest.fixture(autouse=True)
def builtin_checks():
    register()
    yield
