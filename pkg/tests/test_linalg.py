import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import circulant_chain, naive_qr_eigvalsh
from thermobound.errors import DomainError, PreconditionError
from thermobound.linalg import (
    as_symmetric,
    eigh_herm,
    eigh_sym,
    matrix_function,
    spd_product_spectrum,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_spd(rng, n):
    a = rng.normal(size=(n, n))
    return a @ a.T + 0.5 * np.eye(n)


symmetric_matrices = st.integers(1, 7).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10))
).map(lambda a: 0.5 * (a + a.T))


class TestEighSym:
    def test_identity(self):
        np.testing.assert_array_equal(eigh_sym(np.eye(4)).eigenvalues, np.ones(4))

    def test_two_by_two(self):
        np.testing.assert_allclose(eigh_sym([[1, -0.3], [-0.3, 1]]).eigenvalues, [0.7, 1.3], atol=1e-15)

    def test_circulant_chain_eigenvalues(self):
        n, c = 8, 0.3
        expect = np.sort(1 - 2 * c * np.cos(2 * np.pi * np.arange(n) / n))
        np.testing.assert_allclose(eigh_sym(circulant_chain(n, c)).eigenvalues, expect, atol=1e-14)

    def test_rejects_asymmetry(self):
        with pytest.raises(PreconditionError, match="not symmetric"):
            eigh_sym([[1.0, 2.0], [2.0 + 1e-9, 1.0]])

    def test_symmetrises_roundoff(self):
        a = as_symmetric([[1.0, 2.0], [2.0 + 1e-14, 1.0]])
        assert a[0, 1] == a[1, 0]

    def test_rejects_nonsquare_and_empty(self):
        with pytest.raises(PreconditionError):
            eigh_sym(np.ones((2, 3)))
        with pytest.raises(PreconditionError):
            eigh_sym(np.ones((0, 0)))

    @settings(max_examples=80, deadline=None)
    @given(symmetric_matrices)
    def test_reconstruction_and_trace(self, a):
        spec = eigh_sym(a)
        V = spec.eigenvectors
        scale = max(np.abs(a).max(), 1e-300)
        assert np.all(np.diff(spec.eigenvalues) >= 0)
        assert np.abs(V.T @ V - np.eye(a.shape[0])).max() <= 1e-10
        assert np.abs(spec.reconstruct() - a).max() <= 1e-9 * max(scale, 1.0)
        assert abs(spec.eigenvalues.sum() - np.trace(a)) <= 1e-9 * a.shape[0] * max(scale, 1.0)


class TestEighHerm:
    def test_pauli(self):
        np.testing.assert_allclose(eigh_herm(PAULI_Z).eigenvalues, [-1, 1])
        np.testing.assert_allclose(eigh_herm(PAULI_X).eigenvalues, [-1, 1])

    def test_random_vs_naive_qr(self):
        rng = np.random.default_rng(2024)
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        a = a + a.conj().T
        spec = eigh_herm(a)
        np.testing.assert_allclose(spec.eigenvalues, naive_qr_eigvalsh(a), atol=1e-10)
        U = spec.eigenvectors
        assert np.abs(U.conj().T @ U - np.eye(8)).max() <= 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(PreconditionError):
            eigh_herm([[0, 1j], [1j, 0]])


class TestMatrixFunction:
    V = circulant_chain(8, 0.3)

    def test_identity_function(self):
        np.testing.assert_allclose(matrix_function(self.V, lambda x: x), self.V, atol=1e-9)

    def test_sqrt_squares_back(self):
        r = matrix_function(self.V, np.sqrt)
        np.testing.assert_allclose(r @ r, self.V, atol=1e-9)

    def test_w_two_forms(self):
        T = 0.4
        lam = 1 - 2 * 0.3 * np.cos(2 * np.pi * np.arange(8) / 8)
        np.testing.assert_allclose(1 + 2 / np.expm1(np.sqrt(lam) / T),
                                   1 / np.tanh(np.sqrt(lam) / (2 * T)), atol=1e-10)
        a = matrix_function(self.V, lambda x: 1 + 2 / (np.exp(np.sqrt(x) / T) - 1))
        b = matrix_function(self.V, lambda x: 1 / np.tanh(np.sqrt(x) / (2 * T)))
        assert np.abs(a - b).max() <= 1e-10

    def test_domain_error_names_eigenvalue(self):
        with pytest.raises(DomainError, match="eigenvalue"):
            matrix_function([[-1.0, 0.0], [0.0, 2.0]], np.log)

    def test_scalar_only_callable(self):
        import math
        with pytest.raises(DomainError, match="-1.0"):
            matrix_function([[-1.0, 0.0], [0.0, 2.0]], math.sqrt)

    @settings(max_examples=40, deadline=None)
    @given(symmetric_matrices)
    def test_composition(self, a):
        h = np.tanh
        g = lambda x: x**3 - x  # noqa: E731
        lhs = matrix_function(a, lambda x: g(h(x)))
        rhs = matrix_function(matrix_function(a, h), g)
        assert np.abs(lhs - rhs).max() <= 1e-9


class TestSpdProductSpectrum:
    def test_identity(self):
        np.testing.assert_allclose(spd_product_spectrum(np.eye(3), np.eye(3)), 1.0)

    def test_diagonal(self):
        np.testing.assert_allclose(spd_product_spectrum(np.diag([2.0, 3.0]), np.diag([0.5, 1.0])),
                                   [1.0, 3.0])

    def test_random_vs_general_eigensolve(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            a, b = random_spd(rng, 6), random_spd(rng, 6)
            brute = np.sort(np.linalg.eigvals(a @ b).real)
            np.testing.assert_allclose(spd_product_spectrum(a, b), brute, rtol=1e-8, atol=1e-8)

    def test_commutes(self):
        rng = np.random.default_rng(11)
        a, b = random_spd(rng, 5), random_spd(rng, 5)
        np.testing.assert_allclose(spd_product_spectrum(a, b), spd_product_spectrum(b, a), atol=1e-8)

    def test_non_spd(self):
        with pytest.raises(PreconditionError, match="B is not positive definite"):
            spd_product_spectrum(np.eye(2), np.diag([1.0, -1.0]))
        with pytest.raises(PreconditionError, match="A is not positive definite"):
            spd_product_spectrum(np.diag([1.0, -0.5]), np.eye(2))
