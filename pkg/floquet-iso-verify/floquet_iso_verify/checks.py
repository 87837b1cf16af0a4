# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Built-in verification checks: argument binders and runners."""

from __future__ import annotations

import argparse
from typing import Callable, Dict, Optional, Tuple

from floquet_iso_core.config import SpectralConfig
from floquet_iso_core.io import load_potential
from floquet_iso_core.potential import AddConstant

from . import arguments
from .components import component_floquet
from .coprime import enumerate_vanishing_determinants
from .harness import (
    ambarzumian_probe,
    separability_transfer,
    verify_average_shift,
    verify_mode_masses,
    verify_sum_identity,
)
from .models import VerificationReport


def _pair_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("v", metavar="V", help="Potential file for V")
    parser.add_argument("y", metavar="Y", help="Potential file for Y")
    parser.add_argument("--lambda1", type=arguments.complex_value, default=0j, help="Energy for V as re,im")
    parser.add_argument(
        "--lambda2", type=arguments.complex_or_auto, default=arguments.AUTO, help="Energy for Y as re,im, or auto"
    )
    parser.add_argument("--S", dest="S", type=arguments.int_list, help="Free coordinates (1-based); default all")
    parser.add_argument("--fix", action="append", metavar="J=K", help="Frozen k_j outside S; repeatable")


def _load_pair(args: argparse.Namespace):
    V = load_potential(args.v)
    Y = load_potential(args.y)
    return V, Y, arguments.resolve_lambda2(V, Y, args.lambda1, args.lambda2)


def _run_average_shift(args: argparse.Namespace, config: SpectralConfig) -> VerificationReport:
    V, Y, lambda2 = _load_pair(args)
    S = arguments.coordinates(args.S, V.lattice.d)
    return verify_average_shift(
        V, Y, args.lambda1, lambda2, S, arguments.fixed_k(args.fix), tol=args.tol, config=config
    )


def _bind_sum_identity(parser: argparse.ArgumentParser) -> None:
    _pair_arguments(parser)
    parser.add_argument("--samples", type=int, default=50, help="Random admissible points")


def _run_sum_identity(args: argparse.Namespace, config: SpectralConfig) -> VerificationReport:
    V, Y, lambda2 = _load_pair(args)
    S = arguments.coordinates(args.S, V.lattice.d)
    return verify_sum_identity(
        V, Y, args.lambda1, lambda2, S, args.samples, arguments.fixed_k(args.fix), tol=args.tol, config=config
    )


def _bind_mode_mass(parser: argparse.ArgumentParser) -> None:
    _pair_arguments(parser)
    parser.add_argument("--triple", type=arguments.int_list, help="Three coordinates of S; default the first three")


def _run_mode_mass(args: argparse.Namespace, config: SpectralConfig) -> VerificationReport:
    V, Y, lambda2 = _load_pair(args)
    S = arguments.coordinates(args.S, V.lattice.d)
    return verify_mode_masses(
        V, Y, args.lambda1, lambda2, S, args.triple, arguments.fixed_k(args.fix), tol=args.tol, config=config
    )


def _bind_coprime(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--periods", type=arguments.int_list, required=True, help="Three pairwise coprime periods")


def _run_coprime(args: argparse.Namespace, config: SpectralConfig) -> VerificationReport:
    return enumerate_vanishing_determinants(args.periods, tol=args.tol, config=config)


def _bind_transfer(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("v", metavar="V", help="Potential file for V")
    parser.add_argument("--pattern", type=arguments.pattern_value, required=True, help="Separability pattern")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--partner", help="Potential file for Y")
    source.add_argument("--recipe", type=arguments.recipe_value, help="Transform recipe building Y from V")
    parser.add_argument("--shift", type=arguments.complex_value, help="Constant added after the recipe")
    parser.add_argument("--lambda1", type=arguments.complex_value, default=0j, help="Energy for V as re,im")
    parser.add_argument("--S-map", dest="s_map", help="Per-pair sets, e.g. '1,2=1,2,3;1,3=1,3,4'")


def _run_transfer(args: argparse.Namespace, config: SpectralConfig) -> VerificationReport:
    V = load_potential(args.v)
    if args.partner:
        partner = load_potential(args.partner)
    else:
        partner = list(args.recipe) + ([AddConstant(args.shift)] if args.shift is not None else [])
    return separability_transfer(
        V, args.pattern, partner, args.lambda1, arguments.s_map(args.s_map), tol=args.tol, config=config
    )


def _bind_ambarzumian(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("v", metavar="V", help="Potential file for V")
    parser.add_argument(
        "--lambdas", type=arguments.complex_list, default=[0j], help="Scanned energies, e.g. '0;0.5;1,0.25'"
    )
    parser.add_argument("--S", dest="S", type=arguments.int_list, default=[1, 2, 3], help="Free coordinates")
    parser.add_argument("--target", choices=["mean", "zero"], default="mean", help="Constant partner")
    parser.add_argument("--fix", action="append", metavar="J=K", help="Frozen k_j outside S; repeatable")


def _run_ambarzumian(args: argparse.Namespace, config: SpectralConfig) -> VerificationReport:
    V = load_potential(args.v)
    return ambarzumian_probe(
        V, args.lambdas, args.S, tol=args.tol, target=args.target, fixed_k=arguments.fixed_k(args.fix), config=config
    )


def _bind_component_floquet(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("v", metavar="V", help="Potential file for V")
    parser.add_argument("y", metavar="Y", help="Potential file for Y")
    parser.add_argument("--pattern", type=arguments.pattern_value, required=True, help="oplus pattern")
    parser.add_argument("--lambda1", type=arguments.complex_value, default=0j, help="Energy for V as re,im")
    parser.add_argument(
        "--lambda2", type=arguments.complex_or_auto, default=arguments.AUTO, help="Energy for Y as re,im, or auto"
    )
    parser.add_argument("--full-premise", action="store_true", help="Certify the premise on the full grid")


def _run_component_floquet(args: argparse.Namespace, config: SpectralConfig) -> VerificationReport:
    V, Y, lambda2 = _load_pair(args)
    return component_floquet(
        V, Y, args.pattern, args.lambda1, lambda2, tol=args.tol, full_premise=args.full_premise, config=config
    )


Runner = Callable[[argparse.Namespace, SpectralConfig], VerificationReport]
Binder = Optional[Callable[[argparse.ArgumentParser], None]]

BUILTIN_CHECKS: Dict[str, Tuple[Runner, Binder, str]] = {
    "avg-shift": (_run_average_shift, _pair_arguments, "Mean shift of isospectral pairs over #S >= 2"),
    "sum-identity": (_run_sum_identity, _bind_sum_identity, "Double-sum identity at random admissible z"),
    "mode-mass": (_run_mode_mass, _bind_mode_mass, "Fourier mass per frequency class of a coordinate triple"),
    "coprime-det": (_run_coprime, _bind_coprime, "Vanishing pattern of the three-period root determinant"),
    "transfer": (_run_transfer, _bind_transfer, "Separability transfer to an isospectral partner"),
    "ambarzumian": (_run_ambarzumian, _bind_ambarzumian, "Isospectrality to a constant forces a constant"),
    "component-floquet": (
        _run_component_floquet,
        _bind_component_floquet,
        "Floquet isospectrality of corrected oplus summands",
    ),
}
