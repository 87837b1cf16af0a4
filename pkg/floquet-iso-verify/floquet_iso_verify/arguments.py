# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""argparse converters shared by the CLI subcommands and the verification checks."""

from __future__ import annotations

import argparse
from typing import Dict, List, Optional, Tuple

from floquet_iso_core.exceptions import BadPattern, PotentialFormatError
from floquet_iso_core.isospectral import derive_lambda2
from floquet_iso_core.models import Pattern
from floquet_iso_core.potential import Potential, TransformOp, parse_complex, parse_recipe

AUTO = "auto"


def int_list(text: str) -> List[int]:
    """``"2,3,5"`` -> ``[2, 3, 5]``."""
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def complex_value(text: str) -> complex:
    """``"re,im"`` or ``"re"``."""
    try:
        return parse_complex(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def complex_or_auto(text: str):
    return AUTO if text.strip().lower() == AUTO else complex_value(text)


def complex_list(text: str) -> List[complex]:
    """Semicolon-separated complex scalars: ``"0;0.5;1,0.25"``."""
    values = [complex_value(part) for part in text.split(";") if part.strip()]
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def pattern_value(text: str) -> Pattern:
    try:
        return Pattern.parse(text)
    except (BadPattern, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e))


def recipe_value(text: str) -> List[TransformOp]:
    try:
        return parse_recipe(text)
    except PotentialFormatError as e:
        raise argparse.ArgumentTypeError(str(e))


def fixed_k(assignments: Optional[List[str]]) -> Dict[int, float]:
    """``["4=0.25", "5=0"]`` -> ``{4: 0.25, 5: 0.0}``."""
    fixed: Dict[int, float] = {}
    for item in assignments or []:
        j, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError
            fixed[int(j)] = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"--fix expects j=value, got '{item}'")
    return fixed


def s_map(text: Optional[str]) -> Dict[Tuple[int, int], List[int]]:
    """``"1,2=1,2,3;1,3=1,3,4"`` -> ``{(1, 2): [1, 2, 3], (1, 3): [1, 3, 4]}``."""
    mapping: Dict[Tuple[int, int], List[int]] = {}
    for item in filter(None, (part.strip() for part in (text or "").split(";"))):
        pair, sep, members = item.partition("=")
        try:
            s, t = (int(v) for v in pair.split(","))
            if not sep:
                raise ValueError
            mapping[(s, t)] = int_list(members)
        except (ValueError, argparse.ArgumentTypeError):
            raise argparse.ArgumentTypeError(f"--S-map expects 's,t=j1,j2,...' entries, got '{item}'")
    return mapping


def resolve_lambda2(V: Potential, Y: Potential, lambda1: complex, lambda2) -> complex:
    """``auto`` derives the only compatible energy from the mean shift."""
    return derive_lambda2(V, Y, lambda1) if lambda2 == AUTO else complex(lambda2)


def coordinates(S: Optional[List[int]], d: int) -> List[int]:
    return list(S) if S else list(range(1, d + 1))
