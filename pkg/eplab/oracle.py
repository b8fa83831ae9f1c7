# encoding: utf-8
u"""
 Brute-force ground truth: the full coupled problem diagonalized as one
 dense matrix over (mode, ξ), without the effective-potential detour.

     H_full[(n,ξ),(n',ξ')] = δ_nn' [h_g(ξ,ξ') + ε_n δ_ξξ'] + δ_ξξ' V_nn'(ξ)
"""
import numpy as np

from .BaseRecord import BaseRecord, frozen
from .config import default_config, validate_config
from .exceptions import ConfigError, ShapeMismatch
from .linalg import diagonalize_sym
from .model import (CONSTANT, GIVEN, CouplingMatrices, CouplingSpec, Grid, ModeFamily,
                    ProblemSpec, build_problem, hamiltonian_g, project_coupling)
from .truncated import ChannelOperator

ORACLE_CAP = 2000
COMPARE_TOL = 1e-7
MATCH_WINDOW = 1e-6  # relative distance still paired (and then judged by tol)


def full_hamiltonian(spec, v, include_cross=True, n_channels=None):
    """H_full over the first n_channels modes (all by default)."""
    n = spec.n_tot if n_channels is None else int(n_channels)
    if not 1 <= n <= spec.n_tot or v.n_tot < n or v.n_g != spec.n_g:
        raise ShapeMismatch("cannot build %r channels from %s" % (n_channels, v))
    operator = ChannelOperator(hamiltonian_g(spec), spec.modes.eps[:n],
                               v.v[:n, :n], include_cross)
    return operator.matrix()


class DirectSpectrum(BaseRecord):
    """Eigenpairs of H_full."""

    _FIELDS = ("energies", "residual_bound")

    def __init__(self, matrix, energies, vectors):
        self.matrix = frozen(matrix)
        self.energies = frozen(energies)
        self.vectors = frozen(vectors)
        self.residual_bound = float(np.max(np.linalg.norm(
            matrix @ vectors - vectors * energies, axis=0)))
        self.id = "direct[%d]" % self.energies.size
        self._seal()


def direct_spectrum(spec, v, include_cross=True, n_channels=None, cap=ORACLE_CAP,
                    method="auto"):
    """Diagonalize the full problem directly; refuses dimensions above cap."""
    n = spec.n_tot if n_channels is None else int(n_channels)
    dim = n * spec.n_g
    if dim > cap:
        raise ConfigError("run.oracle_cap", "dimension %d exceeds the oracle cap %d"
                          % (dim, cap))
    matrix = full_hamiltonian(spec, v, include_cross, n)
    energies, vectors = diagonalize_sym(matrix, method=method)
    return DirectSpectrum(matrix, energies, vectors)


class ComparisonReport(BaseRecord):
    """Pairing of two sorted spectra."""

    _FIELDS = ("passed", "max_abs_dev", "max_rel_dev", "matched_pairs",
               "unmatched_a", "unmatched_b", "tol")

    def __init__(self, pairs, unmatched_a, unmatched_b, tol):
        pairs = np.asarray(pairs, dtype=float).reshape(-1, 2)
        dev = np.abs(pairs[:, 0] - pairs[:, 1])
        scale = np.maximum(1.0, np.max(np.abs(pairs), axis=1)) if pairs.size else dev
        self.max_abs_dev = float(np.max(dev)) if dev.size else 0.0
        self.max_rel_dev = float(np.max(dev / scale)) if dev.size else 0.0
        self.matched_pairs = int(pairs.shape[0])
        self.unmatched_a = [float(x) for x in unmatched_a]
        self.unmatched_b = [float(x) for x in unmatched_b]
        self.tol = float(tol)
        self.passed = (self.max_rel_dev <= self.tol
                       and not self.unmatched_a and not self.unmatched_b)
        self.id = "comparison"
        self._seal()


def compare_spectra(a, b, tol=COMPARE_TOL):
    """Greedy pairing of sorted values in order.

    Relative deviations are taken against max(1, |a|, |b|). Values farther
    apart than the match window stay unmatched on their side.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    window = max(MATCH_WINDOW, 10.0 * tol)
    pairs, only_a, only_b = [], [], []
    i = j = 0
    while i < a.size and j < b.size:
        scale = max(1.0, abs(a[i]), abs(b[j]))
        if abs(a[i] - b[j]) <= window * scale:
            pairs.append((a[i], b[j]))
            i += 1
            j += 1
        elif a[i] < b[j]:
            only_a.append(a[i])
            i += 1
        else:
            only_b.append(b[j])
            j += 1
    only_a.extend(a[i:])
    only_b.extend(b[j:])
    return ComparisonReport(pairs, only_a, only_b, tol)


def state_residual(spec, v, state, include_cross=True):
    """||(H_full − E) c|| for the unit channel vector c of an assembled state."""
    matrix = full_hamiltonian(spec, v, include_cross)
    c = state.channel_vector()
    return float(np.linalg.norm(matrix @ c - state.energy * c))


def random_instance(seed, n_tot, n_g, n_q=None, g=1.0):
    """A validated configuration with random ingredients.

    Modes are random and orthonormal in the q quadrature, the coupling
    kernel and the external potential are random samples.
    """
    rng = np.random.default_rng(seed)
    n_q = max(2 * n_tot, 8) if n_q is None else int(n_q)
    if n_q < n_tot:
        raise ConfigError("modes.N_q", "at least N_tot q points are needed")
    config = default_config()
    config["grid"]["N_g"] = int(n_g)
    config["modes"].update({"kind": "given", "N_tot": int(n_tot), "N_q": n_q})

    # Orthonormal in the trapezoid metric of the q grid
    weights = np.full(n_q, 1.0 / (n_q - 1))
    weights[0] = weights[-1] = 0.5 / (n_q - 1)
    q, _ = np.linalg.qr(rng.standard_normal((n_q, n_tot)))
    phi = q.T / np.sqrt(weights)[None, :]
    config["modes"]["eps"] = np.sort(rng.uniform(0.0, 3.0, n_tot)).tolist()
    config["modes"]["phi"] = phi.tolist()

    config["coupling"].update({"kind": "custom_sampled", "g": float(g),
                               "samples": (-g * rng.uniform(0.0, 2.0, (n_q, n_g))).tolist()})
    config["hg"]["stiffness"] = float(rng.uniform(0.001, 0.02))
    config["hg"]["potential"] = rng.uniform(-1.0, 1.0, n_g).tolist()
    config["run"]["seed"] = int(seed)
    return validate_config(config)


def random_problem(seed, n_tot, n_g, **kwargs):
    """(ProblemSpec, CouplingMatrices) of a random instance."""
    spec = build_problem(random_instance(seed, n_tot, n_g, **kwargs))
    v = project_coupling(spec.modes, spec.coupling, spec.xi_grid)
    return spec, v


TWO_WELL_SITES = (4, 11)
TWO_WELL_COUPLINGS = (6.0, 5.6)
TWO_WELL_TAU = 2.5  # bound states have PR near 1, segment states above 3


def two_well_problem():
    """Flat medium, mode 0 strongly coupled to mode 1 at two sites only.

    N_g = 16, hopping 1, ε = (0, 3), V_01 = −6 at ξ = 4 and −5.6 at ξ = 11,
    zero elsewhere; V_00 = V_11 = 0. Any well mode 0 feels is produced by
    the coupling. Each site binds one state below the mode-1 band (inside
    an EP well) and one above it (on an EP barrier); the rest spread over
    the segments between the sites.
    """
    n_g, n_tot = 16, 2
    xi_grid = Grid.uniform(n_g)
    q_grid = Grid.uniform(n_tot + 2)
    # Each mode sits on its own interior q point
    phi = np.zeros((n_tot, n_tot + 2))
    for n in range(n_tot):
        phi[n, n + 1] = 1.0 / np.sqrt(q_grid.weights[n + 1])
    family = ModeFamily(GIVEN, n_tot, q_grid, eps=[0.0, 3.0], phi=phi)
    spec = ProblemSpec(xi_grid, family, CouplingSpec(CONSTANT, g=0.0),
                       xi_grid.spacing ** 2)
    v = np.zeros((n_tot, n_tot, n_g))
    for site, coupling in zip(TWO_WELL_SITES, TWO_WELL_COUPLINGS):
        v[0, 1, site] = v[1, 0, site] = -coupling
    return spec, CouplingMatrices(v)
