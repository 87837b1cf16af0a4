# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Shared lattices and seeded potentials."""

from __future__ import annotations

import pytest

from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.potential import random_potential


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


@pytest.fixture(scope="session")
def real_v23(lat23):
    return random_potential(lat23, 5, "real")
