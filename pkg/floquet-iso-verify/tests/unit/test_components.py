# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.

"""Unit tests for floquet_iso_verify.components"""

import numpy as np
import pytest

from floquet_iso_core.exceptions import NotSeparable
from floquet_iso_core.models import Pattern, Verdict
from floquet_iso_core.potential import (
    AddConstant,
    Potential,
    Translate,
    apply_recipe,
    average,
    random_potential,
    random_separable,
)
from floquet_iso_verify.components import build_correctors, component_floquet
from floquet_iso_verify.errors import HypothesisViolation, PremiseFailed

OPLUS = Pattern.oplus([1, 1, 1], 1)


@pytest.fixture(scope="module")
def oplus_v(lat2357):
    return random_separable(lat2357, OPLUS, 11)


class TestCorrectors:
    def test_corrected_is_block_average_minus_mean(self, oplus_v):
        correctors = build_correctors(oplus_v, OPLUS)
        grid = oplus_v.grid()
        mean = average(oplus_v)
        expected = [
            grid.mean(axis=(1, 2)) - mean,
            grid.mean(axis=(0, 2)) - mean,
            grid.mean(axis=(0, 1)) - mean,
        ]
        for component, values in zip(correctors.components, expected):
            np.testing.assert_allclose(component.corrected, values.reshape(-1), atol=1e-12)

    def test_normalization(self, oplus_v):
        correctors = build_correctors(oplus_v, OPLUS)
        assert correctors.normalization_residual() < 1e-12
        assert correctors.offset == pytest.approx(-average(oplus_v))

    def test_constant_corrects_to_zero(self, lat2357):
        correctors = build_correctors(Potential.constant(lat2357, 0.6), OPLUS)
        for component in correctors.components:
            np.testing.assert_allclose(component.corrected, 0, atol=1e-12)

    def test_supports_and_shapes(self, oplus_v):
        correctors = build_correctors(oplus_v, OPLUS)
        assert [c.support for c in correctors.components] == [(0, 3), (1, 3), (2, 3)]
        assert [c.lattice.q for c in correctors.components] == [(2, 7), (3, 7), (5, 7)]
        assert all(c.corrector.shape == (7,) for c in correctors.components)

    def test_non_separable(self, lat2357):
        with pytest.raises(NotSeparable):
            build_correctors(random_potential(lat2357, 1), OPLUS)


class TestComponentFloquet:
    def test_translate_plus_constant(self, oplus_v):
        Y = apply_recipe(oplus_v, [Translate((1, 2, 3, 4)), AddConstant(0.4)])
        report = component_floquet(oplus_v, Y, OPLUS, 0.3, 0.7)
        assert report.passed
        assert report.premise_method == "randomized"
        assert report.premise.trials == 8
        assert report.normalization_residual < 1e-12
        assert [entry.support for entry in report.components] == [[1, 4], [2, 4], [3, 4]]
        assert all(entry.report.max_rel_dev <= 1e-8 for entry in report.components)

    def test_report_carries_correctors(self, oplus_v):
        Y = apply_recipe(oplus_v, [Translate((1, 2, 3, 4)), AddConstant(0.4)])
        report = component_floquet(oplus_v, Y, OPLUS, 0.3, 0.7)
        ours, theirs = build_correctors(oplus_v, OPLUS), build_correctors(Y, OPLUS)
        for entry, a, b in zip(report.components, ours.components, theirs.components):
            assert entry.v_corrector.offset == pytest.approx(-average(oplus_v))
            assert entry.y_corrector.offset == pytest.approx(-average(Y))
            np.testing.assert_allclose(entry.v_corrector.values, a.corrector, atol=1e-14)
            np.testing.assert_allclose(entry.y_corrector.values, b.corrector, atol=1e-14)
            assert len(entry.v_corrector.values) == 7

        data = report.to_json_dict()["components"][0]
        offset = complex(ours.offset)
        assert data["v_corrector"]["offset"] == pytest.approx([offset.real, offset.imag])
        assert len(data["y_corrector"]["values"]) == 7
        assert all(len(pair) == 2 for pair in data["y_corrector"]["values"])

    def test_self_comparison(self, oplus_v):
        report = component_floquet(oplus_v, oplus_v, OPLUS, 0.2, 0.2)
        assert report.passed
        assert all(entry.report.max_rel_dev == 0.0 for entry in report.components)

    def test_block_condition(self, lat235):
        V = random_separable(lat235, Pattern.oplus([1, 1], 1), 3)
        with pytest.raises(HypothesisViolation, match="d - d_j - d_r >= 2"):
            component_floquet(V, V, Pattern.oplus([1, 1], 1), 0, 0)

    def test_needs_oplus_pattern(self, oplus_v):
        with pytest.raises(HypothesisViolation, match="oplus"):
            component_floquet(oplus_v, oplus_v, Pattern.blocks([1, 1, 1, 1]), 0, 0)

    def test_premise_failure(self, oplus_v):
        values = oplus_v.values.copy()
        values[5] += 0.3
        with pytest.raises(PremiseFailed) as excinfo:
            component_floquet(oplus_v, Potential(oplus_v.lattice, values), OPLUS, 0, 0)
        assert excinfo.value.report.verdict == Verdict.FAIL

    def test_non_separable_pair(self, lat2357):
        V = random_potential(lat2357, 4)
        Y = apply_recipe(V, [Translate((1, 0, 0, 0))])
        with pytest.raises(NotSeparable):
            component_floquet(V, Y, OPLUS, 0, 0)

    def test_warns_about_randomized_premise(self, oplus_v, caplog):
        with caplog.at_level("WARNING", logger="floquet_iso_verify.components"):
            component_floquet(oplus_v, oplus_v, OPLUS, 0, 0)
        assert "random points" in caplog.text
