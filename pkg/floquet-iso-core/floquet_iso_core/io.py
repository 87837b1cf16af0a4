# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""JSON files for potentials and Fourier tables.

A potential file is ``{"periods": [...], "values": [[re, im], ...]}`` with the
values in ``index_of`` order. Files are checked against the bundled JSON
Schema first and then against the lattice (coprime periods, length Q).
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from floquet_iso_core.exceptions import FloquetIsoException, PotentialFormatError
from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.potential import FourierTable, Potential

POTENTIAL_SCHEMA_RESOURCE = "potential.schema.json"


@lru_cache(maxsize=1)
def potential_schema() -> Dict[str, Any]:
    """Return the bundled potential-file JSON Schema."""
    schema_path = resources.files("floquet_iso_core.schema").joinpath(POTENTIAL_SCHEMA_RESOURCE)
    return json.loads(schema_path.read_text(encoding="utf-8"))


def _json_schema_path(path: Any) -> str:
    result = "$"
    for item in path or []:
        result += f"[{item}]" if isinstance(item, int) else f".{item}"
    return result


def validate_potential_document(data: Any) -> None:
    from jsonschema import Draft202012Validator

    validator = Draft202012Validator(potential_schema())
    errors = sorted(validator.iter_errors(data), key=lambda err: list(err.path))
    if errors:
        first = errors[0]
        raise PotentialFormatError(
            f"Potential file schema validation failed at {_json_schema_path(first.path)}: {first.message}"
        )


def pairs(values: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=np.complex128)]


def potential_to_json_dict(V: Potential) -> Dict[str, Any]:
    return {"periods": list(V.lattice.q), "values": pairs(V.values)}


def potential_from_json_dict(data: Any) -> Potential:
    validate_potential_document(data)
    try:
        lattice = new_lattice(data["periods"])
    except FloquetIsoException as e:
        raise PotentialFormatError(f"Potential file has an invalid lattice: {e}") from e
    values = np.array([complex(re, im) for re, im in data["values"]], dtype=np.complex128)
    if values.shape[0] != lattice.Q:
        raise PotentialFormatError(
            f"Potential file lists {values.shape[0]} values; periods {list(lattice.q)} need Q={lattice.Q}."
        )
    return Potential(lattice, values)


def fourier_to_json_dict(F: FourierTable, threshold: float = 0.0) -> Dict[str, Any]:
    """Table dump; entries at or below ``threshold`` in magnitude are listed as zero."""
    coeffs = np.where(np.abs(F.coeffs) > threshold, F.coeffs, 0)
    return {
        "periods": list(F.lattice.q),
        "coeffs": [
            {"l": [int(v) for v in l], "re": float(c.real), "im": float(c.imag)}
            for l, c in zip(F.lattice.multi_indices, coeffs)
        ],
    }


def load_potential(path: Union[str, Path]) -> Potential:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise PotentialFormatError(f"Potential file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise PotentialFormatError(f"Potential file {path} is not valid JSON: {e}") from e
    return potential_from_json_dict(data)


def dump_potential(V: Potential, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(potential_to_json_dict(V), indent=2) + "\n", encoding="utf-8")
