# encoding: utf-8

from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose

from eplab.exceptions import NonSymmetric
from eplab.linalg import diagonalize_sym, numerical_rank, symmetric_det


def random_symmetric(n, seed=0):
    a = np.random.default_rng(seed).standard_normal((n, n))
    return a + a.T


class TestDiagonalize(TestCase):

    def test_identity(self):
        values, vectors = diagonalize_sym(np.eye(4))
        assert_allclose(values, np.ones(4))
        assert_allclose(vectors.T @ vectors, np.eye(4), atol=1e-12)

    def test_diagonal_sorted(self):
        """diag(3, 1, 2) comes back as (1, 2, 3) with unit vectors."""
        values, vectors = diagonalize_sym(np.diag([3.0, 1.0, 2.0]))
        assert_allclose(values, [1, 2, 3])
        assert_allclose(np.abs(vectors), np.eye(3)[:, [1, 2, 0]], atol=1e-12)

    def test_reconstruction(self):
        m = random_symmetric(12)
        for method in ("jacobi", "lapack", "auto"):
            values, vectors = diagonalize_sym(m, method=method)
            error = np.linalg.norm(m - (vectors * values) @ vectors.T) / np.linalg.norm(m)
            self.assertLessEqual(error, 1e-9)
            self.assertTrue(np.all(np.diff(values) >= 0))

    def test_jacobi_random_sweep(self):
        """Jacobi converges on 120 random matrices of dimension 2 to 32."""
        rng = np.random.default_rng(11)
        for trial in range(120):
            n = 2 + trial % 31
            a = rng.standard_normal((n, n)) * 10.0 ** rng.uniform(-3, 3)
            m = a + a.T
            values, vectors = diagonalize_sym(m, method="jacobi")
            assert_allclose(values, np.linalg.eigvalsh(m), atol=1e-9 * np.linalg.norm(m))

    def test_jacobi_tiny_coupling(self):
        """Off-diagonal entries far below the diagonal gap neither overflow nor stall."""
        m = np.diag([1.0, 2.0, 5.0, 1e3])
        m[0, 3] = m[3, 0] = 1e-300
        m[1, 2] = m[2, 1] = 1e-14
        with np.errstate(over="raise", invalid="raise"):
            values, vectors = diagonalize_sym(m, method="jacobi")
        assert_allclose(values, [1.0, 2.0, 5.0, 1e3], rtol=1e-12)
        assert_allclose(vectors.T @ vectors, np.eye(4), atol=1e-12)

    def test_methods_agree(self):
        m = random_symmetric(20, seed=3)
        jacobi, _ = diagonalize_sym(m, method="jacobi")
        lapack, _ = diagonalize_sym(m, method="lapack")
        assert_allclose(jacobi, lapack, atol=1e-10)

    def test_large_uses_lapack(self):
        m = random_symmetric(40, seed=5)
        values, _ = diagonalize_sym(m)
        assert_allclose(values, np.linalg.eigvalsh(m), atol=1e-9)

    def test_empty(self):
        values, vectors = diagonalize_sym(np.zeros((0, 0)))
        self.assertEqual(values.size, 0)

    def test_non_symmetric(self):
        with self.assertRaises(NonSymmetric):
            diagonalize_sym([[1.0, 2.0], [0.0, 1.0]])
        with self.assertRaises(NonSymmetric):
            diagonalize_sym(np.ones((2, 3)))

    def test_unknown_method(self):
        with self.assertRaises(ValueError):
            diagonalize_sym(np.eye(2), method="qr")


class TestDeterminant(TestCase):

    def test_matches_numpy(self):
        for seed in range(5):
            m = random_symmetric(7, seed)
            assert_allclose(symmetric_det(m), np.linalg.det(m), rtol=1e-9)

    def test_indefinite_2x2_pivots(self):
        m = np.array([[0.0, 1.0], [1.0, 0.0]])
        self.assertAlmostEqual(symmetric_det(m), -1.0)


class TestRank(TestCase):

    def test_rank(self):
        self.assertEqual(numerical_rank([1.0, 1e-3, 1e-12], 1e-10), 2)
        self.assertEqual(numerical_rank([0.0, 0.0], 1e-10), 0)
        self.assertEqual(numerical_rank([], 1e-10), 0)
