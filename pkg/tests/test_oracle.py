# encoding: utf-8

from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose

from eplab.exceptions import ConfigError, ShapeMismatch
from eplab.model import hamiltonian_g
from eplab.oracle import (compare_spectra, direct_spectrum, full_hamiltonian,
                          random_instance, random_problem)

from .instances import small_problem, zero_coupling_problem


class TestFullHamiltonian(TestCase):

    def test_zero_coupling(self):
        """Uncoupled energies are the sums eig(h_g) + ε_n."""
        spec, v = zero_coupling_problem()
        medium = np.linalg.eigvalsh(hamiltonian_g(spec))
        expected = np.sort(np.concatenate([medium + e for e in spec.modes.eps]))
        assert_allclose(direct_spectrum(spec, v).energies, expected, atol=1e-10)

    def test_single_channel(self):
        spec, v = small_problem(5, 3)
        h = full_hamiltonian(spec, v, n_channels=1)
        expected = hamiltonian_g(spec) + np.diag(v.v[0, 0]) + spec.modes.eps0 * np.eye(5)
        assert_allclose(h, expected)

    def test_symmetric(self):
        spec, v = small_problem(5, 3)
        h = full_hamiltonian(spec, v)
        self.assertEqual(h.shape, (15, 15))
        assert_allclose(h, h.T)

    def test_channel_count(self):
        spec, v = small_problem(5, 3)
        with self.assertRaises(ShapeMismatch):
            full_hamiltonian(spec, v, n_channels=0)
        with self.assertRaises(ShapeMismatch):
            full_hamiltonian(spec, v, n_channels=4)

    def test_cap(self):
        spec, v = small_problem(5, 3)
        with self.assertRaises(ConfigError) as cm:
            direct_spectrum(spec, v, cap=10)
        self.assertEqual(cm.exception.path, "run.oracle_cap")

    def test_residual_bound(self):
        spec, v = small_problem(5, 3)
        self.assertLess(direct_spectrum(spec, v).residual_bound, 1e-9)


class TestCompareSpectra(TestCase):

    def test_equal(self):
        report = compare_spectra([2.0, 0.0, 1.0], [0.0, 1.0, 2.0 + 1e-9])
        self.assertTrue(report.passed)
        self.assertEqual(report.matched_pairs, 3)
        self.assertAlmostEqual(report.max_abs_dev, 1e-9)

    def test_extra_value(self):
        report = compare_spectra([0.0, 1.0], [0.0, 1.0, 5.0])
        self.assertFalse(report.passed)
        self.assertEqual(report.unmatched_b, [5.0])
        self.assertEqual(report.unmatched_a, [])

    def test_deviation_above_tolerance(self):
        """Close values pair up but are judged by tol."""
        report = compare_spectra([100.0], [100.0 + 1e-5], tol=1e-9)
        self.assertEqual(report.matched_pairs, 1)
        self.assertFalse(report.passed)
        self.assertAlmostEqual(report.max_rel_dev, 1e-7, places=12)

    def test_empty(self):
        self.assertTrue(compare_spectra([], []).passed)


class TestRandomInstance(TestCase):

    def test_reproducible(self):
        self.assertEqual(random_instance(3, 3, 4), random_instance(3, 3, 4))
        self.assertNotEqual(random_instance(3, 3, 4), random_instance(4, 3, 4))

    def test_orthonormal_modes(self):
        spec, v = random_problem(5, 4, 3)
        phi = spec.modes.phi
        w = spec.modes.q_grid.weights
        assert_allclose(np.einsum("q,nq,mq->nm", w, phi, phi), np.eye(4), atol=1e-10)
        self.assertEqual(v.v.shape, (4, 4, 3))

    def test_too_few_points(self):
        with self.assertRaises(ConfigError):
            random_instance(0, 5, 3, n_q=4)
