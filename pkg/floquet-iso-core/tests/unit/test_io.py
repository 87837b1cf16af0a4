# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.

"""Unit tests for floquet_iso_core.io"""

import json

import numpy as np
import pytest

from floquet_iso_core.exceptions import PotentialFormatError
from floquet_iso_core.io import (
    dump_potential,
    fourier_to_json_dict,
    load_potential,
    potential_from_json_dict,
    potential_schema,
    potential_to_json_dict,
)
from floquet_iso_core.potential import Potential, dft, random_potential


class TestPotentialFiles:
    def test_schema_is_bundled(self):
        schema = potential_schema()
        assert schema["required"] == ["periods", "values"]

    def test_dump_and_load(self, tmp_path, lat235):
        V = random_potential(lat235, 8, "complex")
        path = tmp_path / "v.json"
        dump_potential(V, path)
        W = load_potential(path)
        assert W.lattice == V.lattice
        assert np.array_equal(W.values, V.values)

    def test_document_layout(self, lat23):
        V = Potential.from_function(lat23, lambda n: n[0] + 1j * n[1])
        data = potential_to_json_dict(V)
        assert data["periods"] == [2, 3]
        assert data["values"][lat23.index_of((1, 2))] == [1.0, 2.0]

    def test_missing_values(self):
        with pytest.raises(PotentialFormatError, match=r"at \$"):
            potential_from_json_dict({"periods": [2, 3]})

    def test_bad_pair_reports_path(self):
        doc = {"periods": [2], "values": [[0, 0], [1]]}
        with pytest.raises(PotentialFormatError, match=r"\$\.values\[1\]"):
            potential_from_json_dict(doc)

    def test_non_coprime_periods(self):
        doc = {"periods": [2, 4], "values": [[0, 0]] * 8}
        with pytest.raises(PotentialFormatError, match="invalid lattice"):
            potential_from_json_dict(doc)

    def test_length_mismatch(self):
        doc = {"periods": [2, 3], "values": [[0, 0]] * 5}
        with pytest.raises(PotentialFormatError, match="Q=6"):
            potential_from_json_dict(doc)

    def test_missing_file(self, tmp_path):
        with pytest.raises(PotentialFormatError, match="not found"):
            load_potential(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{periods: }")
        with pytest.raises(PotentialFormatError, match="not valid JSON"):
            load_potential(path)


class TestFourierDump:
    def test_constant_potential(self, lat23):
        data = fourier_to_json_dict(dft(Potential.constant(lat23, 2.5)), threshold=1e-12)
        assert data["periods"] == [2, 3]
        assert data["coeffs"][0] == {"l": [0, 0], "re": 2.5, "im": 0.0}
        assert all(entry["re"] == 0 and entry["im"] == 0 for entry in data["coeffs"][1:])

    def test_is_json_serializable(self, real_v):
        json.dumps(fourier_to_json_dict(dft(real_v)))
