# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.

"""Unit tests for floquet_iso_core.models"""

import pytest

from floquet_iso_core.exceptions import BadPattern, BadSpec
from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.models import IsoMode, IsoSpec, Pattern, PatternKind


class TestPattern:
    @pytest.mark.parametrize("text", ["pair:1,3", "blocks:1+2", "oplus:1+1|2"])
    def test_parse_and_render(self, text):
        assert Pattern.parse(text).to_text() == text

    def test_parse_oplus_fields(self):
        p = Pattern.parse("oplus:2+1|1")
        assert p.kind == PatternKind.OPLUS
        assert p.sizes == [2, 1]
        assert p.shared == 1
        assert p.dimension() == 4

    @pytest.mark.parametrize("text", ["pair:2,1", "pair:1", "blocks:3", "oplus:1+1", "oplus:1|1", "swap:1,2", "pair"])
    def test_rejects_malformed(self, text):
        with pytest.raises(BadPattern):
            Pattern.parse(text)

    def test_pair_needs_enough_coordinates(self):
        with pytest.raises(BadPattern, match="d >= 4"):
            Pattern.pair(1, 4).validate_for(new_lattice([2, 3, 5]))

    def test_blocks_must_cover_lattice(self):
        with pytest.raises(BadPattern, match="covers 2"):
            Pattern.blocks([1, 1]).validate_for(new_lattice([2, 3, 5]))

    def test_pair_supports(self):
        assert Pattern.pair(1, 3).supports(3) == [(0, 1), (1, 2)]

    def test_oplus_supports_include_shared_block(self):
        assert Pattern.oplus([1, 2], 1).supports(4) == [(0, 3), (1, 2, 3)]

    def test_blocks_required_pairs(self):
        assert Pattern.blocks([1, 2]).required_pairs() == [(1, 2), (1, 3)]

    def test_oplus_required_pairs_skip_shared_block(self):
        assert Pattern.oplus([1, 1], 2).required_pairs() == [(1, 2)]

    def test_pair_has_no_partition(self):
        with pytest.raises(BadPattern):
            Pattern.pair(1, 2).partition()


class TestIsoSpec:
    def test_lambda2_defaults_to_lambda1(self):
        spec = IsoSpec(mode=IsoMode.PARTIAL_FERMI, lambda1=0.5, S=[2, 1, 2])
        assert spec.lambda2 == 0.5
        assert spec.S == [1, 2]

    def test_frozen_coordinates(self):
        lattice = new_lattice([2, 3, 5])
        spec = IsoSpec(mode=IsoMode.PARTIAL_FERMI, lambda1=0.5, S=[1, 2], fixed_k={3: 0.25})
        assert spec.validate_for(lattice) == {3: 0.25}
        assert IsoSpec(mode=IsoMode.PARTIAL_FERMI, S=[2]).validate_for(lattice) == {1: 0.0, 3: 0.0}

    def test_empty_s(self):
        with pytest.raises(BadSpec, match="non-empty"):
            IsoSpec(mode=IsoMode.PARTIAL_FERMI, S=[]).validate_for(new_lattice([2, 3]))

    def test_s_outside_range(self):
        with pytest.raises(BadSpec, match="subset"):
            IsoSpec(mode=IsoMode.PARTIAL_FERMI, S=[3]).validate_for(new_lattice([2, 3]))

    def test_fermi_quantifies_every_coordinate(self):
        with pytest.raises(BadSpec, match="every coordinate"):
            IsoSpec(mode=IsoMode.FERMI, S=[1]).validate_for(new_lattice([2, 3]))

    def test_fermi_needs_equal_energies(self):
        with pytest.raises(BadSpec, match="lambda2 = lambda1"):
            IsoSpec(mode=IsoMode.FERMI, lambda1=0.1, lambda2=0.2, S=[1, 2]).validate_for(new_lattice([2, 3]))

    def test_fixed_k_inside_s(self):
        spec = IsoSpec(mode=IsoMode.PARTIAL_FERMI, S=[1], fixed_k={1: 0.5})
        with pytest.raises(BadSpec, match="not outside"):
            spec.validate_for(new_lattice([2, 3]))

    def test_json_dict(self):
        spec = IsoSpec.generalized_fermi(0.5, 1.5 - 1j, 2)
        assert spec.to_json_dict() == {
            "mode": "generalized_fermi",
            "S": [1, 2],
            "lambda1": [0.5, 0.0],
            "lambda2": [1.5, -1.0],
            "fixed_k": {},
        }
