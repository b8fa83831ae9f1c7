# encoding: utf-8
"""Hand-built problem instances shared by the tests."""
import numpy as np

from eplab.assembly import AssembledState
from eplab.config import default_config
from eplab.effective import EffectivePotential
from eplab.model import (CONSTANT, GIVEN, CouplingSpec, Grid,
                         ModeFamily, ProblemSpec, build_problem, project_coupling)
from eplab.oracle import TWO_WELL_SITES, TWO_WELL_TAU, two_well_problem  # noqa: F401

WELLS = TWO_WELL_SITES


def scalar_ep():
    """h0 = 0, one pole at 2 with residue 1: F(η) = −η + 1/(η − 2)."""
    return EffectivePotential([[0.0]], [2.0], [[1.0]])


def replicated_ep():
    """Two distinct poles, each twice degenerate with full-rank merged residues."""
    h0 = np.array([[0.0, 0.3], [0.3, 0.5]])
    poles = [1.0, 1.0, 3.0, 3.0]
    vectors = [[0.4, 0.1], [0.05, 0.5], [0.3, -0.2], [0.1, 0.6]]
    return EffectivePotential(h0, poles, vectors)


def orthonormal_modes(n_q, n_tot):
    """Unit vectors of the trapezoid q grid on [0, 1]: φ_n = δ at point n."""
    q_grid = Grid.uniform(n_q, (0.0, 1.0))
    phi = np.zeros((n_tot, n_q))
    for n in range(n_tot):
        phi[n, n + 1] = 1.0 / np.sqrt(q_grid.weights[n + 1])
    return q_grid, phi


def channel_problem(n_g, eps, potential=None, stiffness=None, boundary="dirichlet"):
    """ProblemSpec with given modes localized on distinct interior q points.

    The kernel is a placeholder: couplings are built by hand. Stiffness
    defaults to the hopping-1 value h².
    """
    n_tot = len(eps)
    xi_grid = Grid.uniform(n_g, (0.0, 1.0), boundary)
    q_grid, phi = orthonormal_modes(n_tot + 2, n_tot)
    family = ModeFamily(GIVEN, n_tot, q_grid, eps=eps, phi=phi)
    h = xi_grid.spacing
    if stiffness is None:
        stiffness = h * h
    return ProblemSpec(xi_grid, family, CouplingSpec(CONSTANT, g=0.0),
                       stiffness, potential)


def zero_coupling_config(n_g=8, n_tot=3):
    """Default bump family with the attraction switched off."""
    config = default_config()
    config["grid"]["N_g"] = n_g
    config["modes"]["N_tot"] = n_tot
    config["coupling"]["g"] = 0.0
    return config


def zero_coupling_problem(n_g=8, n_tot=3):
    spec = build_problem(zero_coupling_config(n_g, n_tot))
    return spec, project_coupling(spec.modes, spec.coupling, spec.xi_grid)


def small_config(n_g=6, n_tot=3, g=1.0):
    """A quick bump-family configuration."""
    config = default_config()
    config["grid"]["N_g"] = n_g
    config["modes"]["N_tot"] = n_tot
    config["modes"]["N_q"] = 32
    config["coupling"]["g"] = g
    config["run"]["scan_samples"] = 200
    return config


def small_problem(n_g=6, n_tot=3, g=1.0):
    spec = build_problem(small_config(n_g, n_tot, g))
    return spec, project_coupling(spec.modes, spec.coupling, spec.xi_grid)


def point_state(i, xi_grid, site):
    """A single-channel state concentrated on one ξ point."""
    full = np.zeros((1, len(xi_grid)))
    full[0, site] = 1.0 / np.sqrt(xi_grid.weights[site])
    return AssembledState(i, float(i), full, full, [1.0], xi_grid.weights)


def flat_state(i, xi_grid):
    """A single-channel state spread evenly over the ξ grid."""
    full = np.ones((1, len(xi_grid)))
    return AssembledState(i, float(i), full, full, [1.0], xi_grid.weights)


def hand_states():
    """Five states on a 5-point Dirichlet grid.

    One at ξ index 0, three at ξ index 4 and one flat intermediate state.
    """
    xi_grid = Grid.uniform(5)
    states = [point_state(0, xi_grid, 0)]
    states += [point_state(i, xi_grid, 4) for i in (1, 2, 3)]
    states.append(flat_state(4, xi_grid))
    return xi_grid, states
