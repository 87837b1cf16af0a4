# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.

"""Unit tests for floquet_iso_core.testing (the partner contract suite factory)."""

import pytest

from floquet_iso_core.isospectral import make_isospectral_partner
from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.models import IsoSpec
from floquet_iso_core.potential import Potential, Reflect, Translate, random_potential
from floquet_iso_core.testing import make_partner_contract_suite


def _translate_partner(V):
    return make_isospectral_partner(V, [Translate((1, 2))])


def _reflect_partner(V):
    return make_isospectral_partner(V, [Reflect()])


def _shift_partner(V):
    return make_isospectral_partner(V, [Translate((0, 1))], c=1.5, lambda1=0.25)


TestTranslatePartnerContract = make_partner_contract_suite(_translate_partner, periods=(2, 3))
TestReflectPartnerContract = make_partner_contract_suite(_reflect_partner, periods=(2, 3))
TestShiftPartnerContract = make_partner_contract_suite(_shift_partner, periods=(2, 3), kind="complex")


# ---------------------------------------------------------------------------
# Verify the suite actually catches a false claim
# ---------------------------------------------------------------------------


def _bumped_partner(V):
    values = V.values.copy()
    values[0] += 0.1
    return Potential(V.lattice, values), IsoSpec.floquet(V.lattice.d)


class TestContractSuiteCatchesViolations:
    """Direct invocation of suite methods to verify a false claim is detected."""

    def _pair(self):
        V = random_potential(new_lattice([2, 3]), 3)
        return (V, *_bumped_partner(V))

    def test_catches_false_floquet_claim(self):
        instance = make_partner_contract_suite(_bumped_partner, periods=(2, 3))()
        with pytest.raises(AssertionError, match="floquet claim failed"):
            instance.test_expected_claim_certifies(self._pair())

    def test_catches_broken_mean_shift(self):
        instance = make_partner_contract_suite(_bumped_partner, periods=(2, 3))()
        with pytest.raises(AssertionError):
            instance.test_energies_obey_mean_shift(self._pair())
