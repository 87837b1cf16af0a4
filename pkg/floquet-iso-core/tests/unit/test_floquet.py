# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.

"""Unit tests for floquet_iso_core.floquet"""

import numpy as np
import pytest

from floquet_iso_core.config import DEFAULT_CONFIG
from floquet_iso_core.exceptions import SpectralParameterOutOfRange, ZeroSpectralParameter
from floquet_iso_core.floquet import (
    FloquetPair,
    PointConvention,
    build_bloch,
    build_dv,
    build_dv_tilde,
    build_floquet_pair,
    characteristic_values,
    charpoly_lambda,
    determinant,
    determinant_scale,
    eigenvalues,
    evaluate_charpoly,
    gershgorin_radius,
    node_values,
    verify_unitary_equivalence,
)
from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.potential import AddConstant, Potential, dft, random_potential, transform


def _cofactor_det(M):
    if M.shape[0] == 1:
        return M[0, 0]
    total = 0j
    for col in range(M.shape[0]):
        minor = np.delete(M[1:], col, axis=1)
        total += (-1) ** col * M[0, col] * _cofactor_det(minor)
    return total


def _torus(rng, size):
    return np.exp(2j * np.pi * rng.uniform(size=size))


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class TestBuildDv:
    def test_three_periodic_chain(self):
        lattice = new_lattice([3])
        k = 0.2
        M = build_dv(Potential.constant(lattice, 0), [k]).entries
        phase = np.exp(2j * np.pi * k)
        expected = np.array([[0, 1, 1 / phase], [1, 0, 1], [phase, 1, 0]])
        np.testing.assert_allclose(M, expected, atol=1e-15)

    def test_two_periodic_hops_add(self):
        lattice = new_lattice([2])
        M = build_dv(Potential.constant(lattice, 0), [0.0]).entries
        np.testing.assert_allclose(M, [[0, 2], [2, 0]], atol=1e-15)
        np.testing.assert_allclose(eigenvalues(M), [-2, 2], atol=1e-14)

    def test_two_periodic_corner_entry(self):
        lattice = new_lattice([2])
        V = Potential(lattice, [0.3, -0.4])
        k = 0.37
        M = build_dv(V, [k]).entries
        assert M[0, 1] == pytest.approx(1 + np.exp(-2j * np.pi * k))
        assert M[1, 0] == pytest.approx(1 + np.exp(2j * np.pi * k))
        assert M[0, 0] == pytest.approx(0.3)

    def test_hermitian_for_real_data(self, real_v23):
        M = build_dv(real_v23, [0.3, 0.7])
        assert M.hermitian_residual() < 1e-12
        assert M.is_hermitian()

    def test_diagonal_carries_potential(self, real_v):
        M = build_dv(real_v, [0.1, 0.2, 0.3]).entries
        np.testing.assert_array_equal(np.diag(M), real_v.values)

    def test_imaginary_quasi_momentum_capped(self, real_v23):
        build_dv(real_v23, [0.1 + 9j, 0.2])
        with pytest.raises(SpectralParameterOutOfRange):
            build_dv(real_v23, [0.1 + 11j, 0.2])

    def test_wrong_point_length(self, real_v23):
        with pytest.raises(ValueError):
            build_dv(real_v23, [0.1, 0.2, 0.3])

    def test_bloch_form_agrees(self, real_v):
        k = np.array([0.1, -0.25 + 0.05j, 0.4])
        np.testing.assert_allclose(
            build_bloch(real_v, np.exp(2j * np.pi * k)).entries, build_dv(real_v, k).entries, atol=1e-13
        )

    def test_tilde_form_agrees(self, real_v):
        rng = np.random.default_rng(1)
        z = _torus(rng, 3)
        k = np.angle(z ** np.asarray(real_v.lattice.q)) / (2 * np.pi)
        np.testing.assert_allclose(build_dv_tilde(real_v, z).entries, build_dv(real_v, k).entries, atol=1e-12)

    def test_zero_multiplier_rejected(self, real_v23):
        with pytest.raises(ZeroSpectralParameter):
            build_bloch(real_v23, [0, 1])
        with pytest.raises(ZeroSpectralParameter):
            build_dv_tilde(real_v23, [1, 0])


class TestFloquetPair:
    def test_zero_potential_is_diagonal(self, lat235):
        rng = np.random.default_rng(2)
        z = _torus(rng, 3) * 1.1
        pair = build_floquet_pair(Potential.constant(lat235, 0), z)
        assert np.max(np.abs(pair.B)) < 1e-15
        lam = 0.3 + 0.2j
        expected = np.prod(pair.diagonal - lam)
        assert _rel(determinant(pair.matrix() - lam * np.eye(lat235.Q)), expected) < 1e-12

    def test_diagonal_formula(self, lat23):
        z = np.array([1.5, 0.5j])
        pair = build_floquet_pair(Potential.constant(lat23, 0), z)
        n = lat23.index_of((1, 2))
        rho1, rho2 = np.exp(2j * np.pi / 2), np.exp(2j * np.pi * 2 / 3)
        expected = rho1 * z[0] + 1 / (rho1 * z[0]) + rho2 * z[1] + 1 / (rho2 * z[1])
        assert pair.diagonal[n] == pytest.approx(expected)

    def test_constant_potential(self, lat235):
        pair = build_floquet_pair(Potential.constant(lat235, 1.75), [1, 1, 1])
        np.testing.assert_allclose(pair.B, 1.75 * np.eye(lat235.Q), atol=1e-14)

    def test_rows_reindex_fourier_table(self, real_v):
        lattice = real_v.lattice
        pair = build_floquet_pair(real_v, [1, 1j, -1])
        F = dft(real_v)
        np.testing.assert_array_equal(pair.B[0], F.coeffs[lattice.linear_index(-lattice.multi_indices)])
        n, m = lattice.index_of((1, 2, 1)), lattice.index_of((0, 1, 4))
        assert pair.B[n, m] == F.at((1, 1, -3))

    def test_real_potential_gives_hermitian_b(self, real_v):
        B = build_floquet_pair(real_v, [1, 1, 1]).B
        assert np.max(np.abs(B - B.conj().T)) < 1e-14

    def test_zero_multiplier_rejected(self, real_v):
        with pytest.raises(ZeroSpectralParameter):
            build_floquet_pair(real_v, [1, 0, 1])


class TestUnitaryEquivalence:
    def test_free_operator(self, lat235):
        rng = np.random.default_rng(3)
        result = verify_unitary_equivalence(Potential.constant(lat235, 0), _torus(rng, 3))
        assert result.passed

    def test_random_torus_points(self, real_v):
        rng = np.random.default_rng(4)
        for _ in range(50):
            result = verify_unitary_equivalence(real_v, _torus(rng, 3), tol=1e-8)
            assert result.passed, result.max_deviation

    def test_complex_potential_off_torus(self, lat23):
        V = random_potential(lat23, 6, "complex")
        assert verify_unitary_equivalence(V, [1.3 * np.exp(0.4j), 0.8j]).passed

    def test_perturbed_b_fails(self, real_v):
        z = _torus(np.random.default_rng(5), 3)
        pair = build_floquet_pair(real_v, z)
        B = pair.B.copy()
        B[0, 0] += 1e-3
        perturbed = FloquetPair(pair.lattice, pair.diagonal, B, pair.z)
        result = verify_unitary_equivalence(real_v, z, pair=perturbed)
        assert not result.passed
        assert result.max_deviation > 1e-8


class TestDeterminant:
    def test_identity(self):
        assert determinant(np.eye(6)) == pytest.approx(1.0)

    def test_empty_matrix(self):
        assert determinant(np.zeros((0, 0))) == 1.0

    def test_repeated_row(self):
        rng = np.random.default_rng(6)
        M = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        M[3] = M[1]
        assert abs(determinant(M)) < 1e-12 * determinant_scale(M)

    def test_exact_zero_pivot(self):
        assert determinant(np.zeros((3, 3))) == 0

    def test_against_cofactor_expansion(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            M = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
            assert _rel(determinant(M), _cofactor_det(M)) < 1e-10

    def test_permutation_sign(self):
        P = np.eye(4)[[1, 0, 3, 2]]
        assert determinant(P) == pytest.approx(1.0)
        assert determinant(np.eye(3)[[1, 0, 2]]) == pytest.approx(-1.0)


class TestCharpoly:
    def test_two_by_two(self):
        np.testing.assert_allclose(charpoly_lambda(np.array([[0, 2], [2, 0]])), [-4, 0, 1], atol=1e-12)

    def test_quarter_quasi_momentum(self):
        M = build_dv(Potential.constant(new_lattice([2]), 0), [0.25]).entries
        np.testing.assert_allclose(charpoly_lambda(M), [-2, 0, 1], atol=1e-12)

    def test_general_quasi_momentum(self):
        k = 0.137
        M = build_dv(Potential.constant(new_lattice([2]), 0), [k]).entries
        expected = [-(2 + 2 * np.cos(2 * np.pi * k)), 0, 1]
        np.testing.assert_allclose(charpoly_lambda(M), expected, atol=1e-12)

    def test_trace_coefficient(self, real_v):
        M = build_dv(real_v, [0.11, 0.52, 0.83]).entries
        coeffs = charpoly_lambda(M)
        Q = real_v.lattice.Q
        assert coeffs.shape == (Q + 1,)
        assert coeffs[Q] == pytest.approx((-1) ** Q, abs=1e-9)
        trace = np.trace(M)
        assert abs(coeffs[Q - 1] + trace) <= 1e-9 * max(1.0, abs(trace))

    def test_matches_determinant_at_fresh_points(self, real_v23):
        M = build_dv(real_v23, [0.21, 0.64]).entries
        coeffs = charpoly_lambda(M)
        R = float(gershgorin_radius(M)) + 1.0
        rng = np.random.default_rng(8)
        for _ in range(20):
            lam = R * rng.uniform(1.0, 1.5) * np.exp(2j * np.pi * rng.uniform())
            direct = determinant(M - lam * np.eye(M.shape[0]))
            assert _rel(evaluate_charpoly(coeffs, lam), direct) < 1e-8


class TestEigenvalues:
    def test_two_by_two(self):
        np.testing.assert_allclose(eigenvalues(np.array([[0, 2], [2, 0]])), [-2, 2], atol=1e-14)

    def test_scalar_matrix(self):
        values = eigenvalues(1.5j * np.eye(30))
        assert values.shape == (30,)
        np.testing.assert_allclose(values, 1.5j, atol=1e-14)

    def test_hermitian_spectrum_is_real(self, real_v):
        values = eigenvalues(build_dv(real_v, [0.3, 0.1, 0.9]).entries)
        assert np.max(np.abs(values.imag)) < 1e-10
        assert np.all(np.diff(values.real) >= 0)


class TestCharacteristicValues:
    def test_periodic_in_quasi_momentum(self, real_v):
        rng = np.random.default_rng(9)
        for _ in range(5):
            k = rng.uniform(size=3) + 0.1j * rng.normal(size=3)
            lam = complex(rng.normal(), rng.normal())
            base = characteristic_values(real_v, k[None, :], lam)[0]
            for j in range(3):
                shifted = k.copy()
                shifted[j] += 1
                assert _rel(characteristic_values(real_v, shifted[None, :], lam)[0], base) < 1e-10

    def test_spectral_shift(self, real_v):
        c = 0.6 - 0.2j
        W = transform(real_v, AddConstant(c))
        rng = np.random.default_rng(10)
        k = rng.uniform(size=(4, 3))
        lam = 0.4 + 0.3j
        a = characteristic_values(W, k, lam + c)
        b = characteristic_values(real_v, k, lam)
        assert np.max(np.abs(a - b) / np.abs(b)) < 1e-10

    def test_transpose_symmetry(self, real_v):
        rng = np.random.default_rng(11)
        k = rng.uniform(-1, 1, size=(4, 3))
        a = characteristic_values(real_v, k, 0.35)
        b = characteristic_values(real_v, -k, 0.35)
        assert np.max(np.abs(a - b) / np.abs(b)) < 1e-10

    def test_conventions_agree(self, real_v):
        rng = np.random.default_rng(12)
        k = rng.uniform(size=(3, 3))
        z = np.exp(2j * np.pi * k)
        np.testing.assert_allclose(
            characteristic_values(real_v, z, 0.5, PointConvention.Z),
            characteristic_values(real_v, k, 0.5, PointConvention.K),
            rtol=1e-10,
        )

    def test_thread_count_does_not_change_results(self, real_v):
        rng = np.random.default_rng(13)
        k = rng.uniform(size=(40, 3))
        serial = characteristic_values(real_v, k, 0.2, config=DEFAULT_CONFIG.with_overrides(chunk_size=7))
        threaded = characteristic_values(
            real_v, k, 0.2, config=DEFAULT_CONFIG.with_overrides(chunk_size=7, threads=4)
        )
        assert np.array_equal(serial, threaded)

    def test_node_values_match_determinants(self, real_v23):
        k = np.array([[0.2, 0.7], [0.5, 0.1]])
        R = 3.5
        values = node_values(real_v23, k, np.full(2, R))
        assert values.shape == (2, 7)
        lam = R * np.exp(2j * np.pi * 3 / 7)
        direct = determinant(build_dv(real_v23, k[1]).entries - lam * np.eye(6))
        assert _rel(values[1, 3], direct) < 1e-12
