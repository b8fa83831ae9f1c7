# encoding: utf-8

from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from eplab.exceptions import ShapeMismatch
from eplab.model import hamiltonian_g
from eplab.truncated import ChannelOperator, build_truncated, solve_truncated

from .instances import small_problem, two_well_problem


class TestChannelOperator(TestCase):

    def test_two_modes_single_block(self):
        """N_tot = 2: L = h_g + diag(V_11) + ε_10."""
        spec, v = two_well_problem()
        eps = spec.modes.eps
        expected = hamiltonian_g(spec) + np.diag(v.v[1, 1]) + (eps[1] - eps[0]) * np.eye(16)
        assert_allclose(build_truncated(spec, v), expected)

    def test_block_layout(self):
        spec, v = small_problem(4, 3)
        m = ChannelOperator.from_problem(spec, v).matrix()
        self.assertEqual(m.shape, (12, 12))
        assert_allclose(m[4:8, 8:12], np.diag(v.v[1, 2]))
        assert_allclose(m[0:4, 4:8], np.diag(v.v[0, 1]))

    def test_symmetric(self):
        spec, v = small_problem(5, 4)
        L = build_truncated(spec, v)
        assert_array_equal(L, L.T)

    def test_without_cross_couplings(self):
        """Dropping V_nn' between nonzero modes leaves L block diagonal."""
        spec, v = small_problem(4, 3)
        L = build_truncated(spec, v, include_cross=False)
        self.assertFalse(np.any(L[0:4, 4:8]))
        self.assertFalse(np.any(L[4:8, 0:4]))
        self.assertTrue(np.any(build_truncated(spec, v)[0:4, 4:8]))

    def test_tail_of_tail(self):
        spec, v = small_problem(4, 3)
        tail = ChannelOperator.from_problem(spec, v).tail().tail()
        self.assertEqual(tail.n_channels, 1)
        with self.assertRaises(ShapeMismatch):
            tail.tail()

    def test_shape_checks(self):
        spec, v = small_problem(4, 3)
        with self.assertRaises(ShapeMismatch):
            ChannelOperator(np.eye(4), [0.0, 1.0], v.v)


class TestSolveTruncated(TestCase):

    def test_eigenpairs(self):
        spec, v = small_problem(5, 3)
        trunc = solve_truncated(spec, v)
        self.assertEqual(trunc.dim, 10)
        self.assertEqual(trunc.block_vectors().shape, (2, 5, 10))
        assert_allclose(trunc.eigvals, np.linalg.eigvalsh(build_truncated(spec, v)),
                        atol=1e-10)
        self.assertLess(trunc.residual_bound, 1e-9 * np.linalg.norm(trunc.matrix))

    def test_lapack(self):
        spec, v = small_problem(5, 3)
        jacobi = solve_truncated(spec, v, method="jacobi")
        lapack = solve_truncated(spec, v, method="lapack")
        assert_allclose(jacobi.eigvals, lapack.eigvals, atol=1e-10)
