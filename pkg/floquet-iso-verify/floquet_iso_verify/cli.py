# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""floquet-iso: generate, analyse and certify periodic lattice potentials.

Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 PASS or
success, 1 FAIL, 2 usage or I/O error, 3 premise or hypothesis not met.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import ValidationError

from floquet_iso_core.config import SpectralConfig, load_config
from floquet_iso_core.exceptions import FloquetIsoException, NotSeparable
from floquet_iso_core.floquet import build_dv, eigenvalues
from floquet_iso_core.io import dump_potential, fourier_to_json_dict, load_potential, pairs, potential_to_json_dict
from floquet_iso_core.isospectral import certify, make_isospectral_partner
from floquet_iso_core.laurent import fermi_polynomial
from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.models import CertMethod, IsoMode, IsoSpec, Verdict
from floquet_iso_core.potential import average, dft, random_potential, random_separable
from floquet_iso_core.separability import check, decompose, verify_decomposition

from . import __version__, arguments, register
from .errors import HypothesisViolation, PremiseFailed
from .registry import VerificationRegistry

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PREMISE = 3

Outcome = Tuple[Dict[str, Any], int]


class UsageError(Exception):
    """Inconsistent command-line arguments."""


def _verdict_code(verdict: Verdict) -> int:
    return EXIT_PASS if verdict == Verdict.PASS else EXIT_FAIL


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("global options")
    group.add_argument("--config", type=Path, help="YAML file with SpectralConfig values")
    group.add_argument("--tol", type=float, help="Tolerance override for this command")
    group.add_argument("--threads", type=int, help="Worker threads for grid evaluation")
    group.add_argument("--seed", type=int, help="Seed for every randomized step")
    group.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    group.add_argument("--no-timestamp", action="store_true", help="Omit the timestamp for byte-stable reports")
    return common


def _cmd_gen(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    payload: Dict[str, Any] = {"kind": args.kind}
    if args.partner_of:
        V = load_potential(args.partner_of)
        shift = args.shift if args.shift is not None else 0j
        W, spec = make_isospectral_partner(V, args.recipe or [], shift, args.lambda1)
        payload["source"] = str(args.partner_of)
        payload["claim"] = spec.to_json_dict()
    else:
        if not args.periods:
            raise UsageError("gen needs --periods or --partner-of.")
        if args.recipe or args.shift is not None:
            raise UsageError("--recipe and --shift apply to --partner-of only.")
        lattice = new_lattice(args.periods)
        if args.pattern:
            W = random_separable(lattice, args.pattern, config.seed, args.kind)
            payload["pattern"] = args.pattern.to_text()
        else:
            W = random_potential(lattice, config.seed, args.kind)
    payload["periods"] = list(W.lattice.q)
    if args.output:
        dump_potential(W, args.output)
        payload["output"] = str(args.output)
    else:
        payload["potential"] = potential_to_json_dict(W)
    return payload, EXIT_PASS


def _cmd_dft(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    V = load_potential(args.potential)
    payload = fourier_to_json_dict(dft(V), args.threshold)
    payload["average"] = pairs([average(V)])[0]
    return payload, EXIT_PASS


def _separability_tol(args: argparse.Namespace, config: SpectralConfig) -> float:
    return config.separability_tol if args.tol is None else args.tol


def _cmd_sep_check(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    report = check(dft(load_potential(args.potential)), args.pattern, _separability_tol(args, config))
    return report.to_json_dict(), _verdict_code(report.verdict)


def _cmd_sep_decompose(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    V = load_potential(args.potential)
    tol = _separability_tol(args, config)
    try:
        decomposition = decompose(V, args.pattern, tol)
    except NotSeparable as e:
        return {"verdict": Verdict.FAIL.value, "pattern": args.pattern.to_text(), "error": str(e)}, EXIT_FAIL
    reconstruction = verify_decomposition(V, decomposition, tol)
    payload = decomposition.to_json_dict()
    payload["verdict"] = Verdict.PASS.value if reconstruction.passed else Verdict.FAIL.value
    payload["reconstruction_error"] = reconstruction.max_error
    return payload, EXIT_PASS if reconstruction.passed else EXIT_FAIL


def _cmd_charpoly(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    V = load_potential(args.potential)
    poly = fermi_polynomial(V, args.lambda0, config)
    payload = poly.to_json_dict()
    payload["lambda0"] = pairs([args.lambda0])[0]
    return payload, EXIT_PASS


def _cmd_eig(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    V = load_potential(args.potential)
    if len(args.k) != V.lattice.d:
        raise UsageError(f"--k has {len(args.k)} entries; the potential has d={V.lattice.d}.")
    M = build_dv(V, args.k, max_imag_k=config.max_imag_k)
    return {
        "k": list(args.k),
        "hermitian": M.is_hermitian(),
        "eigenvalues": pairs(eigenvalues(M.entries)),
    }, EXIT_PASS


def _iso_spec(args: argparse.Namespace, V, Y) -> IsoSpec:
    d = V.lattice.d
    fixed = arguments.fixed_k(args.fix)
    S = arguments.coordinates(args.S, d)
    if args.mode == "floquet":
        return IsoSpec.floquet(d)
    if args.mode == "fermi":
        return IsoSpec.fermi(args.lambda0, d)
    if args.mode == "partial":
        return IsoSpec(mode=IsoMode.PARTIAL_FERMI, lambda1=args.lambda0, S=S, fixed_k=fixed)
    lambda2 = arguments.resolve_lambda2(V, Y, args.lambda1, args.lambda2)
    mode = IsoMode.GENERALIZED_FERMI if len(S) == d else IsoMode.GENERALIZED_PARTIAL_FERMI
    return IsoSpec(mode=mode, lambda1=args.lambda1, lambda2=lambda2, S=S, fixed_k=fixed)


def _cmd_iso_check(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    V = load_potential(args.v)
    Y = load_potential(args.y)
    spec = _iso_spec(args, V, Y)
    method = CertMethod.RANDOMIZED if args.method == "random" else CertMethod.CERTIFIED_GRID
    report = certify(V, Y, spec, method=method, tol=args.tol, config=config)
    return report.to_json_dict(), _verdict_code(report.verdict)


def _cmd_verify(args: argparse.Namespace, config: SpectralConfig) -> Outcome:
    report = VerificationRegistry.get(args.check).runner(args, config)
    return report.to_json_dict(), _verdict_code(report.verdict)


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="floquet-iso", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", parents=[common], help="Generate a potential or an isospectral partner")
    gen.add_argument("--periods", type=arguments.int_list, help="Pairwise coprime periods, e.g. 2,3,5")
    gen.add_argument("--kind", choices=["real", "complex"], default="real", help="Potential kind")
    gen.add_argument("--pattern", type=arguments.pattern_value, help="Draw a random separable potential")
    gen.add_argument("--partner-of", type=Path, help="Build a partner of this potential file")
    gen.add_argument("--recipe", type=arguments.recipe_value, help="Transforms, e.g. 'translate:1,0,0;reflect'")
    gen.add_argument("--shift", type=arguments.complex_value, help="Constant added to the partner")
    gen.add_argument("--lambda1", type=arguments.complex_value, default=0j, help="Energy recorded in the claim")
    gen.add_argument("-o", "--output", type=Path, help="Write the potential here instead of into the report")
    gen.set_defaults(handler=_cmd_gen)

    dft_cmd = commands.add_parser("dft", parents=[common], help="Discrete Fourier coefficients")
    dft_cmd.add_argument("potential", type=Path)
    dft_cmd.add_argument("--threshold", type=float, default=0.0, help="List smaller coefficients as zero")
    dft_cmd.set_defaults(handler=_cmd_dft)

    sep = commands.add_parser("sep", help="Separability analysis")
    sep_commands = sep.add_subparsers(dest="sep_command", required=True)
    for name, handler, help_text in (
        ("check", _cmd_sep_check, "Check a separability pattern"),
        ("decompose", _cmd_sep_decompose, "Split into pattern components"),
    ):
        sub = sep_commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("potential", type=Path)
        sub.add_argument("--pattern", type=arguments.pattern_value, required=True, help="e.g. pair:1,2")
        sub.set_defaults(handler=handler)

    charpoly = commands.add_parser("charpoly", parents=[common], help="Laurent polynomial of the Fermi variety")
    charpoly.add_argument("potential", type=Path)
    charpoly.add_argument("--lambda0", type=arguments.complex_value, default=0j, help="Energy as re,im")
    charpoly.set_defaults(handler=_cmd_charpoly)

    eig = commands.add_parser("eig", parents=[common], help="Spectrum of D_V(k)")
    eig.add_argument("potential", type=Path)
    eig.add_argument("--k", type=arguments.float_list, required=True, help="Quasi-momentum, e.g. 0.1,0.2,0.3")
    eig.set_defaults(handler=_cmd_eig)

    iso = commands.add_parser("iso", help="Isospectrality certification")
    iso_commands = iso.add_subparsers(dest="iso_command", required=True)
    iso_check = iso_commands.add_parser("check", parents=[common], help="Certify an isospectrality claim")
    iso_check.add_argument("v", metavar="V", type=Path)
    iso_check.add_argument("y", metavar="Y", type=Path)
    iso_check.add_argument("--mode", choices=["floquet", "fermi", "partial", "genfermi"], required=True)
    iso_check.add_argument("--lambda0", type=arguments.complex_value, default=0j, help="Energy for fermi/partial")
    iso_check.add_argument("--lambda1", type=arguments.complex_value, default=0j, help="Energy for V (genfermi)")
    iso_check.add_argument(
        "--lambda2", type=arguments.complex_or_auto, default=arguments.AUTO, help="Energy for Y (genfermi) or auto"
    )
    iso_check.add_argument("--S", dest="S", type=arguments.int_list, help="Free coordinates (1-based)")
    iso_check.add_argument("--fix", action="append", metavar="J=K", help="Frozen k_j outside S; repeatable")
    iso_check.add_argument("--method", choices=["certify", "random"], default="certify")
    iso_check.set_defaults(handler=_cmd_iso_check)

    verify = commands.add_parser("verify", help="Run a registered verification check")
    checks = verify.add_subparsers(dest="check", required=True)
    register()
    for name, entry in VerificationRegistry.list_checks().items():
        sub = checks.add_parser(name, parents=[common], help=entry.description)
        entry.bind(sub)
        sub.set_defaults(handler=_cmd_verify)
    return parser


def _command_name(args: argparse.Namespace) -> str:
    parts = [args.command]
    for attr in ("sep_command", "iso_command", "check"):
        value = getattr(args, attr, None)
        if value:
            parts.append(value)
    return " ".join(parts)


def _emit(args: argparse.Namespace, config: SpectralConfig, result: Dict[str, Any], outcome: str) -> None:
    envelope = {
        "tool": "floquet-iso",
        "version": __version__,
        "command": _command_name(args),
        "outcome": outcome,
        "seed": config.seed,
        "tol": config.tol,
        "separability_tol": config.separability_tol,
        "threads": config.threads,
        "result": result,
    }
    if not args.no_timestamp:
        envelope["timestamp"] = datetime.now(timezone.utc).isoformat()
    print(json.dumps(envelope, indent=2, sort_keys=True))


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_PASS
    _configure_logging(args.verbose)

    try:
        config = load_config(args.config).with_overrides(tol=args.tol, threads=args.threads, seed=args.seed)
    except (FloquetIsoException, ValidationError) as e:
        print(f"Invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        result, code = args.handler(args, config)
    except (PremiseFailed, HypothesisViolation) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        result = {"error": str(e), "kind": type(e).__name__}
        if isinstance(e, PremiseFailed) and e.report is not None:
            result["premise"] = e.report.to_json_dict()
        _emit(args, config, result, "PREMISE_NOT_MET")
        return EXIT_PREMISE
    except NotSeparable as e:
        print(f"NotSeparable: {e}", file=sys.stderr)
        _emit(args, config, {"error": str(e), "kind": "NotSeparable"}, "PREMISE_NOT_MET")
        return EXIT_PREMISE
    except (UsageError, argparse.ArgumentTypeError, FloquetIsoException, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    _emit(args, config, result, {EXIT_PASS: "PASS", EXIT_FAIL: "FAIL"}[code])
    return code


if __name__ == "__main__":
    sys.exit(main())
