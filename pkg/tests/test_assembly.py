# encoding: utf-8

from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose

from eplab.assembly import (AssembledState, complexity_entropy, complexity_measure,
                            density, density_frame, entanglement_entropy,
                            participation_ratio, reconstruct_state, reconstruct_states,
                            schmidt_rank, schmidt_values)
from eplab.effective import assemble_ep
from eplab.exceptions import ShapeMismatch
from eplab.oracle import state_residual
from eplab.spectrum import find_roots
from eplab.truncated import solve_truncated

from .instances import small_problem, zero_coupling_problem


def _states(spec, v):
    trunc = solve_truncated(spec, v)
    sr = find_roots(assemble_ep(trunc, v, spec))
    return reconstruct_states(sr, trunc, v, spec.modes, spec.xi_grid)


class TestReconstruction(TestCase):

    def test_zero_coupling_is_a_product(self):
        """Without coupling every state is φ_0 ⊗ ψ_0: no tails, Schmidt rank 1."""
        spec, v = zero_coupling_problem()
        for state in _states(spec, v):
            self.assertFalse(np.any(state.tails))
            self.assertEqual(schmidt_rank(state), 1)
            self.assertAlmostEqual(entanglement_entropy(state), 0.0, places=10)

    def test_unit_norm(self):
        spec, v = small_problem(5, 3)
        for state in _states(spec, v):
            self.assertAlmostEqual(state.norm, 1.0, places=10)
            self.assertAlmostEqual(density(state).total, 1.0, places=10)

    def test_full_residual(self):
        """Assembled states solve the full problem."""
        spec, v = small_problem(5, 3)
        for state in _states(spec, v):
            self.assertLess(state_residual(spec, v, state), 1e-6)

    def test_single_state(self):
        spec, v = small_problem(4, 3)
        trunc = solve_truncated(spec, v)
        sr = find_roots(assemble_ep(trunc, v, spec))
        state = reconstruct_state(sr, 2, trunc, v, spec.modes, spec.xi_grid)
        self.assertEqual(state.root_index, 2)
        self.assertEqual(state.energy, sr.energies[2])
        self.assertEqual(state.channels.shape, (3, 4))
        self.assertEqual(state.full.shape, (32, 4))

    def test_tail_weight_grows_with_coupling(self):
        weights = []
        for g in (0.1, 0.5, 1.0):
            spec, v = small_problem(5, 3, g)
            weights.append(_states(spec, v)[0].tail_weight)
        self.assertGreater(weights[0], 0.0)
        self.assertLess(weights[0], weights[1])
        self.assertLess(weights[1], weights[2])

    def test_shape_checks(self):
        with self.assertRaises(ShapeMismatch):
            AssembledState(0, 0.0, np.zeros((2, 3)), np.zeros((4, 3)),
                           np.ones(5), np.ones(3))


class TestDensity(TestCase):

    def test_marginals(self):
        spec, v = small_problem(5, 3)
        field = density(_states(spec, v)[0])
        self.assertAlmostEqual(np.sum(field.marginal_q), 1.0, places=10)
        self.assertAlmostEqual(np.sum(spec.xi_grid.weights * field.density_xi), 1.0,
                               places=10)

    def test_frame(self):
        rho = np.arange(6.0).reshape(2, 3)
        frame = density_frame(rho, [0.0, 0.5], [0.0, 0.25, 1.0])
        self.assertEqual(list(frame.columns), ["xi", "0", "0.5"])
        self.assertEqual(list(frame["0.5"]), [3.0, 4.0, 5.0])


class TestParticipationRatio(TestCase):

    def test_uniform(self):
        self.assertAlmostEqual(participation_ratio(np.full(8, 0.125)), 8.0)

    def test_localized(self):
        self.assertAlmostEqual(participation_ratio([0.0, 1.0, 0.0]), 1.0)

    def test_two_sites(self):
        self.assertAlmostEqual(participation_ratio([0.5, 0.5, 0.0, 0.0]), 2.0)

    def test_unnormalized(self):
        with self.assertRaises(ValueError):
            participation_ratio([0.5, 0.6])
        with self.assertRaises(ValueError):
            participation_ratio([])


class TestSchmidt(TestCase):

    def test_product(self):
        self.assertEqual(schmidt_rank(np.outer([1.0, 0.0], [0.6, 0.8])), 1)

    def test_bell_like(self):
        """(e0 f0 + e1 f1)/√2 has two equal Schmidt values."""
        amplitudes = np.eye(2) / np.sqrt(2.0)
        assert_allclose(schmidt_values(amplitudes), [1 / np.sqrt(2.0)] * 2)
        self.assertEqual(schmidt_rank(amplitudes), 2)
        self.assertAlmostEqual(entanglement_entropy(amplitudes), np.log(2.0))

    def test_zero(self):
        with self.assertRaises(ValueError):
            schmidt_values(np.zeros((2, 2)))

    def test_coupled_states_are_entangled(self):
        spec, v = small_problem(5, 3)
        self.assertGreater(schmidt_rank(_states(spec, v)[0]), 1)


class TestComplexity(TestCase):

    def test_measure(self):
        self.assertEqual(complexity_measure(1), 0.0)
        self.assertAlmostEqual(complexity_measure(4), np.log(4.0))
        with self.assertRaises(ValueError):
            complexity_measure(0)

    def test_entropy(self):
        self.assertAlmostEqual(complexity_entropy([0.25] * 4), np.log(4.0))
        self.assertEqual(complexity_entropy([1.0, 0.0]), 0.0)
