# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.

"""Unit tests for floquet_iso_verify.cli"""

import json

import pytest

from floquet_iso_core.io import load_potential
from floquet_iso_verify import __version__
from floquet_iso_verify.cli import EXIT_FAIL, EXIT_PASS, EXIT_PREMISE, EXIT_USAGE, main
from floquet_iso_verify.coprime import enumerate_vanishing_determinants
from floquet_iso_verify.registry import VerificationRegistry


def run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def separable_file(tmp_path, capsys):
    path = tmp_path / "v.json"
    code, _ = run(capsys, "gen", "--periods", "2,3,5", "--pattern", "pair:1,2", "--seed", 7, "-o", path)
    assert code == EXIT_PASS
    return path


@pytest.fixture
def random_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    run(capsys, "gen", "--periods", "2,3,5", "--seed", 3, "-o", path)
    return path


class TestGen:
    def test_writes_potential(self, separable_file):
        V = load_potential(separable_file)
        assert V.lattice.q == (2, 3, 5)
        assert V.is_real

    def test_inline_potential_and_envelope(self, capsys):
        code, report = run(capsys, "gen", "--periods", "2,3", "--kind", "complex", "--seed", 1)
        assert code == EXIT_PASS
        assert report["version"] == __version__
        assert report["seed"] == 1
        assert report["command"] == "gen"
        assert "timestamp" in report
        assert len(report["result"]["potential"]["values"]) == 6

    def test_reproducible_without_timestamp(self, capsys):
        argv = ["gen", "--periods", "2,3,5", "--seed", 9, "--no-timestamp"]
        main([str(a) for a in argv])
        first = capsys.readouterr().out
        main([str(a) for a in argv])
        assert capsys.readouterr().out == first

    def test_partner_claim(self, separable_file, tmp_path, capsys):
        out = tmp_path / "y.json"
        code, report = run(
            capsys, "gen", "--partner-of", separable_file, "--recipe", "translate:1,0,0", "--shift", "0.5", "-o", out
        )
        assert code == EXIT_PASS
        assert report["result"]["claim"]["mode"] == "generalized_fermi"
        assert report["result"]["claim"]["lambda2"] == [0.5, 0.0]

    def test_needs_periods(self, capsys):
        code, _ = run(capsys, "gen")
        assert code == EXIT_USAGE


class TestAnalysis:
    def test_sep_check_round_trip(self, separable_file, capsys):
        code, report = run(capsys, "sep", "check", "--pattern", "pair:1,2", separable_file)
        assert code == EXIT_PASS
        assert report["result"]["verdict"] == "PASS"
        assert report["command"] == "sep check"

    def test_sep_check_fails_on_random(self, random_file, capsys):
        code, report = run(capsys, "sep", "check", "--pattern", "pair:1,2", random_file)
        assert code == EXIT_FAIL
        assert report["outcome"] == "FAIL"

    def test_tol_override_is_reported(self, separable_file, capsys):
        _, report = run(capsys, "sep", "check", "--pattern", "pair:1,2", "--tol", "1e-6", separable_file)
        assert report["result"]["tol"] == 1e-6
        assert report["tol"] == 1e-6

    def test_sep_decompose(self, separable_file, random_file, capsys):
        code, report = run(capsys, "sep", "decompose", "--pattern", "pair:1,2", separable_file)
        assert code == EXIT_PASS
        assert [c["support"] for c in report["result"]["components"]] == [[1, 3], [2, 3]]
        code, _ = run(capsys, "sep", "decompose", "--pattern", "pair:1,2", random_file)
        assert code == EXIT_FAIL

    def test_dft(self, random_file, capsys):
        code, report = run(capsys, "dft", random_file)
        assert code == EXIT_PASS
        assert len(report["result"]["coeffs"]) == 30

    def test_charpoly_bounds(self, tmp_path, capsys):
        path = tmp_path / "small.json"
        run(capsys, "gen", "--periods", "2,3", "-o", path)
        code, report = run(capsys, "charpoly", "--lambda0", "0.5,0", path)
        assert code == EXIT_PASS
        assert report["result"]["bounds"] == [[-3, 3], [-2, 2]]

    def test_eig(self, tmp_path, capsys):
        path = tmp_path / "small.json"
        run(capsys, "gen", "--periods", "2,3", "-o", path)
        code, report = run(capsys, "eig", "--k", "0.1,0.2", path)
        assert code == EXIT_PASS
        assert report["result"]["hermitian"] is True
        assert len(report["result"]["eigenvalues"]) == 6
        code, _ = run(capsys, "eig", "--k", "0.1", path)
        assert code == EXIT_USAGE


class TestIsoCheck:
    def test_self_comparison(self, separable_file, capsys):
        code, report = run(capsys, "iso", "check", "--mode", "fermi", "--lambda0", "0.5,0", separable_file, separable_file)
        assert code == EXIT_PASS
        assert report["result"]["max_rel_dev"] == 0.0

    def test_generalized_with_auto_energy(self, separable_file, tmp_path, capsys):
        partner = tmp_path / "y.json"
        run(capsys, "gen", "--partner-of", separable_file, "--recipe", "translate:0,1,0", "--shift", "0.5", "-o", partner)
        code, report = run(capsys, "iso", "check", "--mode", "genfermi", "--lambda1", "0.2", separable_file, partner)
        assert code == EXIT_PASS
        assert report["result"]["lambda2"] == pytest.approx([0.7, 0.0])

    def test_random_method(self, random_file, separable_file, capsys):
        code, report = run(capsys, "iso", "check", "--mode", "floquet", "--method", "random", random_file, separable_file)
        assert code == EXIT_FAIL
        assert report["result"]["method"] == "randomized"

    def test_bad_spec_is_usage_error(self, separable_file, capsys):
        code, _ = run(capsys, "iso", "check", "--mode", "partial", "--S", "1,2", "--fix", "1=0.5", separable_file, separable_file)
        assert code == EXIT_USAGE


class TestVerify:
    def test_coprime(self, capsys):
        code, report = run(capsys, "verify", "coprime-det", "--periods", "2,3,5")
        assert code == EXIT_PASS
        assert report["result"]["unclassified"] == 0
        assert report["result"]["tuples"] == 900

    def test_avg_shift(self, separable_file, tmp_path, capsys):
        partner = tmp_path / "y.json"
        run(capsys, "gen", "--partner-of", separable_file, "--recipe", "translate:1,1,1", "--shift", "0.3", "-o", partner)
        code, report = run(capsys, "verify", "avg-shift", separable_file, partner, "--S", "1,2")
        assert code == EXIT_PASS
        assert report["result"]["residual"] < 1e-10

    def test_premise_failure_exit_code(self, separable_file, tmp_path, capsys):
        partner = tmp_path / "y.json"
        run(capsys, "gen", "--partner-of", separable_file, "--shift", "0.3", "-o", partner)
        code, report = run(capsys, "verify", "avg-shift", separable_file, partner, "--lambda2", "0", "--S", "1,2")
        assert code == EXIT_PREMISE
        assert report["outcome"] == "PREMISE_NOT_MET"
        assert report["result"]["premise"]["verdict"] == "FAIL"

    def test_hypothesis_exit_code(self, capsys, tmp_path):
        path = tmp_path / "o.json"
        run(capsys, "gen", "--periods", "2,3,5", "--pattern", "oplus:1+1|1", "-o", path)
        code, report = run(capsys, "verify", "component-floquet", "--pattern", "oplus:1+1|1", path, path)
        assert code == EXIT_PREMISE
        assert report["result"]["kind"] == "HypothesisViolation"

    def test_transfer_with_recipe(self, separable_file, capsys):
        code, report = run(
            capsys, "verify", "transfer", separable_file, "--pattern", "pair:1,2", "--recipe", "reflect", "--shift", "1"
        )
        assert code == EXIT_PASS
        assert report["result"]["separability"]["verdict"] == "PASS"

    def test_registered_plugin_becomes_subcommand(self, capsys):
        VerificationRegistry.register("demo-check", lambda args, config: enumerate_vanishing_determinants([2, 3, 5]))
        try:
            code, report = run(capsys, "verify", "demo-check", "--no-timestamp")
        finally:
            VerificationRegistry.unregister("demo-check")
        assert code == EXIT_PASS
        assert "timestamp" not in report


class TestUsage:
    def test_missing_file(self, tmp_path, capsys):
        code, _ = run(capsys, "dft", tmp_path / "missing.json")
        assert code == EXIT_USAGE

    def test_bad_pattern(self, separable_file, capsys):
        code, _ = run(capsys, "sep", "check", "--pattern", "pair:2", separable_file)
        assert code == EXIT_USAGE

    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_help(self, capsys):
        assert main(["--help"]) == EXIT_PASS

    def test_bad_config_value(self, separable_file, capsys):
        code, _ = run(capsys, "dft", "--threads", "0", separable_file)
        assert code == EXIT_USAGE
