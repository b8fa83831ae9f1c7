# encoding: utf-8
u"""
 The effective potential of the channel-0 problem,

     V_eff(ξ, ξ'; η) = V_00(ξ) δ_ξξ' + Σ_k w_k(ξ) w_k(ξ') / (η − p_k)

 with p_k the eigenvalues of the truncated system and
 w_k(ξ) = Σ_{n≥1} V_0n(ξ) ψ⁰_k(n, ξ). Poles closer than the merge tolerance
 are merged, their residues summed into a block R = Σ w wᵀ of rank ≥ 1.

 The effective existence equation is [h0 + V̂(η)] ψ_0 = η ψ_0, and its
 characteristic function F(η) = det[H(η) − η I].
"""
import warnings

import numpy as np
import scipy.linalg as sla

from .BaseRecord import BaseRecord, frozen
from .RecordList import RecordList
from .exceptions import NumericalFailure, PoleProximity, ShapeMismatch, UnsupportedDepth
from .linalg import check_symmetric, symmetric_det
from .truncated import ChannelOperator, solve_operator

MERGE_TOL = 1e-8  # relative to the spectral span
POLE_GUARD = 1e-9  # relative to the spectral span
RANK_TOL = 1e-10
ROOT_TOL = 1e-7  # root certificate, relative to the spectral span
MAX_DEPTH = 2


class EffectivePotential(BaseRecord):
    """Static part h0 plus merged poles with residue blocks."""

    _FIELDS = ("poles", "ranks", "raw_poles", "residue_vectors", "eps0",
               "n_e", "span", "pole_merge_tol", "pole_guard")

    def __init__(self, h0, poles, residue_vectors, hg=None, eps0=0.0, n_e=None,
                 merge_tol=MERGE_TOL, pole_guard=POLE_GUARD, rank_tol=RANK_TOL):
        """Tolerances are relative to the spectral span."""
        h0 = check_symmetric(h0)
        n_g = h0.shape[0]
        poles = np.asarray(poles, dtype=float).reshape(-1)
        residue_vectors = np.asarray(residue_vectors, dtype=float)
        if residue_vectors.size != poles.size * n_g:
            raise ShapeMismatch("one residue vector of %d entries per pole expected" % n_g)
        residue_vectors = residue_vectors.reshape(poles.size, n_g)
        order = np.argsort(poles, kind="stable")
        poles = poles[order]
        residue_vectors = residue_vectors[order].reshape(poles.size, n_g)

        self.h0 = frozen(0.5 * (h0 + h0.T))
        self.hg = None if hg is None else frozen(hg)
        self.raw_poles = frozen(poles)
        self.residue_vectors = frozen(residue_vectors)
        self.eps0 = float(eps0)
        self.n_e = int(poles.size // n_g if n_e is None else n_e)
        self.rank_tol = float(rank_tol)

        h0_values = sla.eigvalsh(self.h0)
        extent = np.concatenate([h0_values, poles])
        self.span = max(1.0, float(np.ptp(extent)))
        self.pole_merge_tol = merge_tol * self.span
        self.pole_guard = pole_guard * self.span

        # Merge clusters of nearby poles
        clusters = []
        for k in range(poles.size):
            if clusters and poles[k] - poles[clusters[-1][-1]] <= self.pole_merge_tol:
                clusters[-1].append(k)
            else:
                clusters.append([k])
        self.multiplicities = frozen([len(c) for c in clusters], dtype=int)
        self.poles = frozen([poles[c].mean() for c in clusters])
        residues = [residue_vectors[c].T @ residue_vectors[c] for c in clusters]
        self.residues = tuple(frozen(0.5 * (r + r.T)) for r in residues)

        spectra = [sla.eigh(r) for r in self.residues]
        largest = max([np.max(np.abs(s)) for s, _ in spectra] or [0.0])
        factors = []
        for s, u in spectra:
            leading = np.max(np.abs(s)) if s.size else 0.0
            if leading <= rank_tol * largest or leading == 0.0:
                keep = np.zeros(s.size, dtype=bool)
            else:
                keep = s > rank_tol * leading
            factors.append(frozen(u[:, keep] * np.sqrt(s[keep])))
        self.factors = tuple(factors)
        self.ranks = frozen([f.shape[1] for f in factors], dtype=int)
        merged = int(np.sum(self.multiplicities > 1))
        if merged:
            warnings.warn("%d pole clusters merged within %g" % (merged, self.pole_merge_tol),
                          RuntimeWarning)
        dropped = int(np.sum(self.multiplicities - self.ranks))
        if dropped:
            warnings.warn("%d residue directions dropped as numerically zero" % dropped,
                          RuntimeWarning)
        self.id = "EP[%d poles]" % self.poles.size
        self._seal()

    @property
    def n_g(self):
        return self.h0.shape[0]

    @property
    def coupled(self):
        """Mask of poles with a nonzero residue."""
        return self.ranks > 0

    def check_guard(self, eta):
        """Raise PoleProximity if eta is within the guard of a coupled pole."""
        poles = self.poles[self.coupled]
        if poles.size:
            k = int(np.argmin(np.abs(poles - eta)))
            if abs(eta - poles[k]) <= self.pole_guard:
                raise PoleProximity(eta, float(poles[k]))

    def evaluate(self, eta):
        """H(η) = h0 + Σ_k R_k / (η − p_k)."""
        eta = float(eta)
        self.check_guard(eta)
        m = np.array(self.h0)
        for p, f in zip(self.poles, self.factors):
            if f.shape[1]:
                m += (f @ f.T) / (eta - p)
        return 0.5 * (m + m.T)

    def characteristic(self, eta):
        """F(η) = det[H(η) − η I]."""
        return symmetric_det(self.evaluate(eta) - float(eta) * np.eye(self.n_g))

    def residual(self, eta, vector):
        """||[H(η) − η I] x|| for a unit vector x."""
        x = np.asarray(vector, dtype=float)
        x = x / np.linalg.norm(x)
        return float(np.linalg.norm(self.evaluate(eta) @ x - eta * x))

    def root_bound(self):
        """Every root lies in [−B, B]: B bounds the norm of the linearization."""
        total = np.sum(self.h0 ** 2)
        for p, f in zip(self.poles, self.factors):
            total += 2.0 * np.sum(f ** 2) + f.shape[1] * p * p
        return 1.01 * np.sqrt(total) + 1.0


def eval_ep(ep, eta):
    """Effective Hamiltonian h0 + V̂(η) as a symmetric N_g × N_g matrix."""
    return ep.evaluate(eta)


def characteristic(ep, eta):
    """Characteristic function F(η) of the effective existence equation."""
    return ep.characteristic(eta)


def residue_vectors_of(operator, truncated):
    """w_k(ξ) = Σ_{n≥1} V_0n(ξ) ψ⁰_k(n, ξ), shape (dim, N_g)."""
    return np.einsum("nx,nxk->kx", operator.coupling_row(), truncated.block_vectors())


def ep_from_operator(operator, truncated, eps0=0.0, **tolerances):
    """Effective potential of a ChannelOperator given its solved tail."""
    return EffectivePotential(operator.head(), truncated.eigvals,
                              residue_vectors_of(operator, truncated),
                              hg=operator.hg, eps0=eps0,
                              n_e=operator.n_channels - 1, **tolerances)


def assemble_ep(trunc, v, spec, include_cross=True, **tolerances):
    """Effective potential of a problem from its truncated solution."""
    operator = ChannelOperator.from_problem(spec, v, include_cross)
    return ep_from_operator(operator, trunc, eps0=spec.modes.eps0, **tolerances)


WELL_TOL = 1e-9  # relative to max(1, ptp(profile))


class WellAlignment(BaseRecord):
    """Where the dynamic EP well sits relative to the state density.

    The wells are the strict local minima of the profile. `well_index` is
    the well nearest the density maximum (the deeper one on a tie), or the
    global minimum when the profile has no well. The root is aligned when
    its density maximum lies within one grid cell of that well.
    """

    _FIELDS = ("root", "well_index", "global_well_index", "density_index",
               "aligned", "wells", "profile")

    def __init__(self, root, profile, density):
        self.root = float(root)
        self.profile = frozen(profile)
        margin = WELL_TOL * max(1.0, float(np.ptp(self.profile)))
        self.density_index = int(np.argmax(density))
        # ties within the margin resolve to the lowest index
        self.global_well_index = int(np.flatnonzero(self.profile <= self.profile.min() + margin)[0])
        self.wells = tuple(find_wells(self.profile, margin))
        if self.wells:
            self.well_index = min(self.wells, key=lambda w: (abs(w - self.density_index),
                                                             self.profile[w]))
        else:
            self.well_index = self.global_well_index
        self.aligned = abs(self.well_index - self.density_index) <= 1
        self.id = self.root
        self._seal()


def find_wells(profile, margin=0.0):
    """Indices lying more than `margin` below each of their neighbours."""
    n = len(profile)
    wells = []
    for i in range(n):
        neighbours = [profile[j] for j in (i - 1, i + 1) if 0 <= j < n]
        if neighbours and profile[i] < min(neighbours) - margin:
            wells.append(i)
    return wells


def ep_well_alignment(ep, root, state):
    """Compare the EP well profile at a root with the root's density.

    The profile is d(ξ) = H(root)(ξ, ξ) − h_g(ξ, ξ): the potential the
    channel-0 field feels beyond its own medium operator.
    """
    if ep.hg is None:
        raise ShapeMismatch("the effective potential carries no h_g")
    state = np.asarray(state, dtype=float)
    if ep.residual(root, state) > ROOT_TOL * ep.span:
        raise NumericalFailure("%r is not a certified root for this state" % root)
    profile = np.diag(ep.evaluate(root)) - np.diag(ep.hg)
    return WellAlignment(root, profile, state ** 2)


def scan_characteristic(ep, samples=2000):
    """Sample F(η) on every interval between adjacent coupled poles.

    The outer intervals are closed by the root bound. Returns
    (eta, values, interval) arrays, interval numbering from the left.
    """
    bound = ep.root_bound()
    edges = np.concatenate([[-bound], ep.poles[ep.coupled], [bound]])
    etas, values, intervals = [], [], []
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        delta = max(10.0 * ep.pole_guard, 1e-9 * (b - a))
        if b - a <= 2.0 * delta:
            continue
        grid = np.linspace(a + delta, b - delta, samples)
        etas.append(grid)
        values.append(np.array([ep.characteristic(x) for x in grid]))
        intervals.append(np.full(samples, i))
    if not etas:
        return np.zeros(0), np.zeros(0), np.zeros(0, dtype=int)
    return np.concatenate(etas), np.concatenate(values), np.concatenate(intervals)


class HierarchyLevel(BaseRecord):
    """One level of the recursive EP construction."""

    _FIELDS = ("depth", "ep")

    def __init__(self, depth, operator, truncated, ep):
        self.depth = int(depth)
        self.operator = operator
        self.truncated = truncated
        self.ep = ep
        self.id = self.depth
        self._seal()


class Hierarchy(RecordList):
    """Levels of the dynamical fractal, outermost first."""

    _CONTAINS = HierarchyLevel


def recurse_ep(spec, v, depth, include_cross=True, method="auto", **tolerances):
    """Apply the EP construction recursively.

    Level 1 is the problem itself. Level 2 treats the truncated system as
    a new existence equation whose mode 0 is the lowest remaining channel.
    """
    if depth not in (1, 2):
        raise UnsupportedDepth("depth unsupported: %r (only 1 and 2)" % (depth,))
    if spec.n_tot < depth + 1:
        raise UnsupportedDepth("depth %d needs at least %d modes" % (depth, depth + 1))
    levels = Hierarchy()
    operator = ChannelOperator.from_problem(spec, v, include_cross)
    for level in range(1, depth + 1):
        truncated = solve_operator(operator.tail(), method=method)
        ep = ep_from_operator(operator, truncated, eps0=spec.modes.eps0, **tolerances)
        levels.append(HierarchyLevel(level, operator, truncated, ep))
        operator = operator.tail()
    return levels
