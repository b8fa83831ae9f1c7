# encoding: utf-8
u"""
 The quantum beat: an unceasing sequence of reduction events.

 Each tick is one reduction-extension cycle. The realisation reached at
 a tick is drawn independently from the probabilities α of the chosen
 rule, passing through the intermediate realisation in between.

 Draws come from numpy's Philox4x64-10 generator keyed directly with the
 64-bit seed (no seed hashing), so a trajectory depends on (seed, T, α)
 alone and can be regenerated by any Philox implementation (see
 docs/beat.rst).
"""
import numpy as np
import pandas as pd
from scipy.stats import chi2

from .BaseRecord import BaseRecord, frozen
from .RecordList import RecordList

SIGMAS = 3.0
CHI2_LEVEL = 0.999
MAX_SEED = 2 ** 64 - 1


def generator(seed):
    """A Philox generator keyed with the seed."""
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError("seed must be an unsigned 64-bit integer, got %r" % seed)
    return np.random.Generator(np.random.Philox(key=seed))


def draw(alpha, n, seed):
    """n independent realisation indices with probabilities alpha."""
    alpha = np.asarray(alpha, dtype=float)
    cdf = np.cumsum(alpha)
    cdf[-1] = 1.0
    u = generator(seed).random(n)
    return np.searchsorted(cdf, u, side="right").astype(int)


class BeatEvent(BaseRecord):
    """Emergence of one realisation at one tick."""

    _FIELDS = ("tick", "realization_id", "center_index", "center_coord")

    def __init__(self, tick, realization_id, center_index, center_coord):
        self.tick = int(tick)
        self.realization_id = int(realization_id)
        self.center_index = int(center_index)
        self.center_coord = float(center_coord)
        self.id = self.tick
        self._seal()


class EventList(RecordList):
    """Events in tick order."""

    _CONTAINS = BeatEvent


class BeatTrajectory(BaseRecord):
    """A seeded event stream over a set of realisations."""

    _FIELDS = ("seed", "mode", "cycles", "alpha", "empirical")

    def __init__(self, seed, mode, ids, centers, center_coords, alpha):
        self.seed = int(seed)
        self.mode = mode
        self.ids = frozen(ids, dtype=int)
        self.centers = frozen(centers, dtype=int)
        self.center_coords = frozen(center_coords)
        self.alpha = frozen(alpha)
        self.id = "beat[%d]" % self.seed
        self._events = None
        self._seal()

    @property
    def cycles(self):
        return int(self.ids.size)

    @property
    def ticks(self):
        return np.arange(self.cycles)

    @property
    def empirical(self):
        return empirical_freqs(self)

    @property
    def events(self):
        """The stream as BeatEvent records (built on first use)."""
        if self._events is None:
            events = EventList(BeatEvent(t, j, self.centers[j], self.center_coords[j])
                               for t, j in enumerate(self.ids))
            object.__setattr__(self, "_events", events)
        return self._events

    @property
    def pandas(self):
        """Events as a DataFrame with the events.csv columns."""
        return pd.DataFrame({
            "tick": self.ticks,
            "realization_id": self.ids,
            "center_index": self.centers[self.ids],
            "center_coord": self.center_coords[self.ids],
        }, columns=list(BeatEvent._FIELDS))


def simulate_beat(rs, cycles, seed, mode):
    """Draw `cycles` reduction events with the probabilities of `mode`."""
    if cycles < 1:
        raise ValueError("at least one cycle is needed")
    if rs.n_realizations < 1:
        raise ValueError("no realisations to draw from")
    if mode not in rs.alpha:
        raise ValueError("no probabilities computed for mode %r" % (mode,))
    alpha = np.asarray(rs.alpha[mode])
    realizations = rs.realizations
    centers = [r.center_index for r in realizations]
    coords = [r.center_coord for r in realizations]
    return BeatTrajectory(seed, mode, draw(alpha, cycles, seed), centers, coords, alpha)


def empirical_freqs(traj):
    """α̂_j = count_j / T."""
    counts = np.bincount(traj.ids, minlength=traj.alpha.size)
    return counts / float(traj.cycles)


def binomial_bounds(alpha, cycles, sigmas=SIGMAS):
    """Half-widths sigmas·sqrt(α(1 − α)/T) of the frequency intervals."""
    alpha = np.asarray(alpha, dtype=float)
    return sigmas * np.sqrt(alpha * (1.0 - alpha) / cycles)


def within_bounds(traj, sigmas=SIGMAS):
    """True if every empirical frequency lies within its binomial bound."""
    deviation = np.abs(empirical_freqs(traj) - traj.alpha)
    return bool(np.all(deviation <= binomial_bounds(traj.alpha, traj.cycles, sigmas)))


def chi_square(traj, level=CHI2_LEVEL):
    """Pearson statistic of the counts against α, with its quantile.

    Returns (statistic, quantile); realisations with α = 0 are left out.
    """
    counts = np.bincount(traj.ids, minlength=traj.alpha.size).astype(float)
    expected = traj.alpha * traj.cycles
    used = expected > 0
    statistic = float(np.sum((counts[used] - expected[used]) ** 2 / expected[used]))
    dof = int(np.sum(used)) - 1
    quantile = float(chi2.ppf(level, dof)) if dof > 0 else 0.0
    return statistic, quantile


def visited_density(traj, rs):
    """Event-weighted density: Σ_j α̂_j ρ_j over the visited realisations."""
    freqs = empirical_freqs(traj)
    return sum(f * rs.realization_density(j) for j, f in enumerate(freqs) if f > 0)


def density_bounds(alpha, profiles, cycles, sigmas=SIGMAS):
    """Pointwise half-widths of Σ_j α̂_j ρ_j under multinomial counts.

    Var = (Σ_j α_j ρ_j² − (Σ_j α_j ρ_j)²) / T at every point.
    """
    alpha = np.asarray(alpha, dtype=float)
    profiles = np.asarray(profiles, dtype=float)
    mean = np.tensordot(alpha, profiles, axes=1)
    second = np.tensordot(alpha, profiles ** 2, axes=1)
    return sigmas * np.sqrt(np.maximum(second - mean ** 2, 0.0) / cycles)


def visited_within_bounds(traj, rs, mixed, sigmas=SIGMAS):
    """True if the visited density lies within the multinomial bounds
    around the mixed density ρ_ex everywhere.
    """
    profiles = [rs.realization_density(j) for j in range(rs.n_realizations)]
    mixed = np.asarray(mixed, dtype=float)
    slack = 1e-12 * max(1.0, float(np.max(np.abs(mixed))))
    deviation = np.abs(visited_density(traj, rs) - mixed)
    return bool(np.all(deviation <= density_bounds(traj.alpha, profiles, traj.cycles, sigmas)
                       + slack))


def reproduces(ids, rs, seed, mode):
    """True if `ids` is exactly the stream regenerated from seed."""
    ids = np.asarray(ids, dtype=int)
    if ids.size == 0:
        return False
    regenerated = simulate_beat(rs, ids.size, seed, mode)
    return bool(np.array_equal(ids, regenerated.ids))
