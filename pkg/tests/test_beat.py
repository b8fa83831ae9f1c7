# encoding: utf-8

from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose

from eplab.beat import (BeatTrajectory, binomial_bounds, chi_square, draw, empirical_freqs,
                        generator, reproduces, simulate_beat, visited_density,
                        visited_within_bounds, within_bounds)
from eplab.realizations import (GROUPED, UNIFORM, group_realizations, mix_density,
                                probabilities)

from .instances import flat_state, hand_states


def _realizations():
    xi_grid, states = hand_states()
    rs = group_realizations(states, xi_grid)
    for mode in (UNIFORM, GROUPED):
        rs = rs.with_alpha(mode, probabilities(rs, mode))
    return rs, states


class TestGenerator(TestCase):

    def test_seed_range(self):
        generator(0)
        generator(2 ** 64 - 1)
        with self.assertRaises(ValueError):
            generator(-1)
        with self.assertRaises(ValueError):
            generator(2 ** 64)

    def test_draw_degenerate(self):
        self.assertEqual(set(draw([0.0, 1.0, 0.0], 500, 3)), {1})
        self.assertEqual(set(draw([1.0, 0.0], 500, 3)), {0})

    def test_draw_is_seeded(self):
        alpha = [0.2, 0.3, 0.5]
        self.assertTrue(np.array_equal(draw(alpha, 100, 42), draw(alpha, 100, 42)))
        self.assertFalse(np.array_equal(draw(alpha, 100, 42), draw(alpha, 100, 43)))

    def test_uniform_stream(self):
        """Doubles are the top 53 bits of the Philox words keyed with the seed."""
        for seed in (0, 7, 2 ** 64 - 1):
            raw = np.random.Philox(key=seed).random_raw(64)
            expected = (raw >> np.uint64(11)).astype(float) * 2.0 ** -53
            self.assertTrue(np.array_equal(generator(seed).random(64), expected))

    def test_draw_thresholds(self):
        """Index j is drawn when the uniform lies in [Σ_{i<j} α_i, Σ_{i≤j} α_i)."""
        alpha = [0.2, 0.3, 0.5]
        for seed in (0, 7, 2 ** 64 - 1):
            u = (np.random.Philox(key=seed).random_raw(500) >> np.uint64(11)) * 2.0 ** -53
            expected = np.sum(u[:, None] >= np.cumsum(alpha)[None, :-1], axis=1)
            self.assertTrue(np.array_equal(draw(alpha, 500, seed), expected))


class TestSimulateBeat(TestCase):

    def setUp(self):
        self.rs, self.states = _realizations()

    def test_deterministic(self):
        a = simulate_beat(self.rs, 1000, 7, GROUPED)
        b = simulate_beat(self.rs, 1000, 7, GROUPED)
        self.assertTrue(np.array_equal(a.ids, b.ids))
        self.assertTrue(a.pandas.equals(b.pandas))

    def test_single_realization(self):
        """With one realisation the stream is constant."""
        xi_grid, _ = hand_states()
        rs = group_realizations([flat_state(0, xi_grid)], xi_grid)
        rs = rs.with_alpha(UNIFORM, probabilities(rs, UNIFORM))
        traj = simulate_beat(rs, 200, 11, UNIFORM)
        self.assertEqual(set(traj.ids), {0})
        assert_allclose(traj.empirical, [1.0])

    def test_events(self):
        traj = simulate_beat(self.rs, 50, 1, UNIFORM)
        self.assertEqual(traj.cycles, 50)
        self.assertEqual(len(traj.events), 50)
        event = traj.events[0]
        self.assertEqual(event.tick, 0)
        self.assertEqual(event.center_index, traj.centers[traj.ids[0]])
        frame = traj.pandas
        self.assertEqual(list(frame.columns),
                         ["tick", "realization_id", "center_index", "center_coord"])
        self.assertTrue(set(frame["center_index"]) <= {0, 4})

    def test_invalid(self):
        with self.assertRaises(ValueError):
            simulate_beat(self.rs, 0, 1, UNIFORM)
        with self.assertRaises(ValueError):
            simulate_beat(self.rs, 10, 1, "born")


class TestStatistics(TestCase):

    def setUp(self):
        self.rs, self.states = _realizations()

    def test_empirical_freqs(self):
        traj = BeatTrajectory(0, UNIFORM, [0, 1, 1, 0, 1], [0, 4], [0.0, 1.0], [0.5, 0.5])
        assert_allclose(empirical_freqs(traj), [0.4, 0.6])

    def test_binomial_bounds(self):
        assert_allclose(binomial_bounds([0.5, 0.0], 100), [0.15, 0.0])

    def test_frequencies_within_bounds(self):
        """Over 20 seeds at least 19 stay within three standard deviations."""
        misses = 0
        for seed in range(20):
            traj = simulate_beat(self.rs, 100000, seed, GROUPED)
            misses += not within_bounds(traj)
        self.assertLessEqual(misses, 1)

    def test_chi_square(self):
        traj = simulate_beat(self.rs, 10000, 5, GROUPED)
        statistic, quantile = chi_square(traj)
        self.assertGreaterEqual(statistic, 0.0)
        self.assertAlmostEqual(quantile, 10.827566170662733, places=6)
        self.assertLess(statistic, quantile)

    def test_visited_density(self):
        """The visited density stays within the multinomial bounds of the
        mixed density, and misses a mixture built with other weights.
        """
        traj = simulate_beat(self.rs, 100000, 9, GROUPED)
        mixed = mix_density(self.rs, self.states, GROUPED)
        self.assertTrue(visited_within_bounds(traj, self.rs, mixed.rho_ex))
        other = mix_density(self.rs, self.states, UNIFORM)
        self.assertFalse(visited_within_bounds(traj, self.rs, other.rho_ex))


class TestReproduces(TestCase):

    def setUp(self):
        self.rs, _ = _realizations()

    def test_regenerated(self):
        traj = simulate_beat(self.rs, 300, 13, UNIFORM)
        self.assertTrue(reproduces(traj.ids, self.rs, 13, UNIFORM))
        self.assertFalse(reproduces(traj.ids, self.rs, 14, UNIFORM))

    def test_reordered(self):
        traj = simulate_beat(self.rs, 300, 13, UNIFORM)
        self.assertFalse(reproduces(traj.ids[::-1], self.rs, 13, UNIFORM))

    def test_empty(self):
        self.assertFalse(reproduces([], self.rs, 13, UNIFORM))
