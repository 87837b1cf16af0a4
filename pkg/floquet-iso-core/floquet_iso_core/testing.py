# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Reusable contract test suite for isospectral partner generators.

A partner generator maps a potential ``V`` to ``(Y, spec)``: a partner and
the isospectrality claim it is expected to satisfy. This suite certifies that
claim and its standard consequences for seeded random potentials.

Example usage in a test module (``tests/unit/test_partner_contract.py``)::

    from floquet_iso_core.potential import Translate
    from floquet_iso_core.isospectral import make_isospectral_partner
    from floquet_iso_core.testing import make_partner_contract_suite

    def translate_partner(V):
        return make_isospectral_partner(V, [Translate((1, 2))])

    TestTranslatePartner = make_partner_contract_suite(translate_partner, periods=(2, 3))

``make_partner_contract_suite`` returns a pytest test class. Assign it to a
module-level name that starts with ``Test`` so pytest discovers it.

``pytest`` is imported at module load time; only import this module from
tests.
"""

from __future__ import annotations

from typing import Callable, Sequence, Tuple

import numpy as np
import pytest

from .isospectral import certify, certify_fermi, derive_lambda2
from .lattice import new_lattice
from .models import CertMethod, IsoMode, IsoSpec
from .potential import Potential, PotentialKind, average, random_potential

PartnerFactory = Callable[[Potential], Tuple[Potential, IsoSpec]]


def make_partner_contract_suite(
    partner_factory: PartnerFactory,
    *,
    periods: Sequence[int],
    seeds: Sequence[int] = (3, 11),
    kind: PotentialKind = "real",
    lambda0: complex = 0.7,
) -> type:
    """Build a pytest test class that validates a partner generator.

    Args:
        partner_factory: Maps ``V`` to ``(Y, expected spec)``.
        periods: Lattice periods for the seeded potentials.
        seeds: One potential is drawn per seed.
        kind: ``"real"`` or ``"complex"`` potentials.
        lambda0: Energy for the implied Fermi check.

    Returns:
        A pytest test class.
    """
    lattice = new_lattice(list(periods))

    class PartnerContract:
        """Contract tests for a partner generator."""

        @pytest.fixture(params=list(seeds), ids=lambda seed: f"seed{seed}")
        def pair(self, request):
            V = random_potential(lattice, request.param, kind)
            Y, spec = partner_factory(V)
            return V, Y, spec

        def test_partner_stays_on_lattice(self, pair):
            V, Y, spec = pair
            assert Y.lattice == V.lattice
            spec.validate_for(V.lattice)

        def test_expected_claim_certifies(self, pair):
            V, Y, spec = pair
            report = certify(V, Y, spec)
            assert report.passed, f"{spec.mode.value} claim failed with deviation {report.max_rel_dev:.3e}"
            assert report.max_rel_dev <= report.tol

        def test_randomized_method_agrees(self, pair):
            V, Y, spec = pair
            certified = certify(V, Y, spec)
            randomized = certify(V, Y, spec, method=CertMethod.RANDOMIZED)
            assert randomized.passed == certified.passed

        def test_energies_obey_mean_shift(self, pair):
            V, Y, spec = pair
            if spec.mode == IsoMode.FLOQUET:
                assert abs(average(V) - average(Y)) < 1e-10
            else:
                assert abs(derive_lambda2(V, Y, spec.lambda1) - spec.lambda2) < 1e-10

        def test_floquet_claim_implies_fermi(self, pair):
            V, Y, spec = pair
            if spec.mode != IsoMode.FLOQUET:
                pytest.skip("only floquet claims imply Fermi isospectrality at every energy")
            rng = np.random.default_rng(0)
            for lam in [lambda0, *(rng.uniform(-3, 3, size=2) + 0.25j)]:
                assert certify_fermi(V, Y, lam).passed

    return PartnerContract
