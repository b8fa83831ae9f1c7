# encoding: utf-8
u"""
 Full two-field states rebuilt from the effective eigen-solutions.

 For a root η_i with channel-0 vector ψ_0i the tails are

     ψ_ni(ξ) = Σ_k ψ⁰_k(n, ξ) <w_k, ψ_0i> / (η_i − η⁰_k)

 summed over the eigenpairs of the truncated system, and the state is

     Ψ_i(q, ξ) = φ_0(q) ψ_0i(ξ) + Σ_{n≥1} φ_n(q) ψ_ni(ξ)

 scaled to unit quadrature norm.
"""
import numpy as np
import pandas as pd
import scipy.linalg as sla

from .BaseRecord import BaseRecord, frozen
from .exceptions import PoleProximity, ShapeMismatch
from .linalg import numerical_rank

NORM_TOL = 1e-9
SCHMIDT_TOL = 1e-8
NEGLIGIBLE = 1e-14  # relative size of an overlap treated as zero


class AssembledState(BaseRecord):
    """A full state Ψ_i(q, ξ) and the channel vector it is built from."""

    _FIELDS = ("root_index", "energy", "psi0", "tails")

    def __init__(self, root_index, energy, channels, full, q_weights, xi_weights):
        channels = frozen(channels)
        full = frozen(full)
        if full.shape != (len(q_weights), len(xi_weights)):
            raise ShapeMismatch("state samples of shape %s do not fit the grids"
                                % (full.shape,))
        if channels.ndim != 2 or channels.shape[1] != len(xi_weights):
            raise ShapeMismatch("expected one channel vector of %d entries per mode"
                                % len(xi_weights))
        self.root_index = int(root_index)
        self.energy = float(energy)
        self.channels = channels
        self.full = full
        self.q_weights = frozen(q_weights)
        self.xi_weights = frozen(xi_weights)
        self.id = self.root_index
        self._seal()

    @property
    def psi0(self):
        return self.channels[0]

    @property
    def tails(self):
        return self.channels[1:]

    @property
    def norm(self):
        """Quadrature norm of Ψ."""
        return float(np.sqrt(np.einsum("q,x,qx->", self.q_weights, self.xi_weights,
                                       self.full ** 2)))

    @property
    def tail_weight(self):
        """Σ_n ||ψ_ni||², Euclidean, after the state was normalized."""
        return float(np.sum(self.tails ** 2))

    def channel_vector(self):
        """Channel amplitudes flattened as (n, ξ), Euclidean unit norm."""
        c = self.channels.reshape(-1)
        return c / np.linalg.norm(c)


def reconstruct_state(sr, i, trunc, v, basis, xi_grid):
    """Assemble Ψ_i from root i of a SpectrumResult."""
    eta = float(sr.roots[i])
    psi0 = np.array(sr.vectors[i])
    blocks = trunc.block_vectors()
    w = np.einsum("nx,nxk->kx", v.v[0, 1:], blocks)
    overlaps = w @ psi0
    denominators = eta - trunc.eigvals

    scale = np.max(np.abs(overlaps)) if overlaps.size else 0.0
    near = np.abs(denominators) <= sr.pole_guard
    if np.any(near & (np.abs(overlaps) > NEGLIGIBLE * max(scale, 1.0))):
        k = int(np.argmax(near))
        raise PoleProximity(eta, float(trunc.eigvals[k]))
    # Decoupled directions contribute nothing
    coefficients = np.where(near, 0.0, overlaps / np.where(near, 1.0, denominators))

    tails = np.einsum("nxk,k->nx", blocks, coefficients)
    channels = np.vstack([psi0[None, :], tails])
    if channels.shape[0] != basis.n_tot:
        raise ShapeMismatch("%d channels for %d modes" % (channels.shape[0], basis.n_tot))
    full = np.einsum("nq,nx->qx", basis.phi, channels)

    norm = np.sqrt(np.einsum("q,x,qx->", basis.q_grid.weights, xi_grid.weights, full ** 2))
    if norm == 0.0:
        raise ShapeMismatch("root %d assembles to a zero state" % i)
    return AssembledState(i, sr.energies[i], channels / norm, full / norm,
                          basis.q_grid.weights, xi_grid.weights)


def reconstruct_states(sr, trunc, v, basis, xi_grid):
    """All states of a SpectrumResult, in root order."""
    return [reconstruct_state(sr, i, trunc, v, basis, xi_grid)
            for i in range(sr.roots.size)]


class DensityField(BaseRecord):
    """ρ(q, ξ) = |Ψ|² and its two marginals as cell masses."""

    _FIELDS = ("marginal_xi", "marginal_q")

    def __init__(self, rho, q_weights, xi_weights):
        self.rho = frozen(rho)
        self.q_weights = frozen(q_weights)
        self.xi_weights = frozen(xi_weights)
        self.marginal_xi = frozen(self.xi_weights * (self.q_weights @ self.rho))
        self.marginal_q = frozen(self.q_weights * (self.rho @ self.xi_weights))
        self.id = "density"
        self._seal()

    @property
    def density_xi(self):
        """ρ(ξ) per unit ξ, integrating to 1 with the ξ weights."""
        return self.marginal_xi / self.xi_weights

    @property
    def total(self):
        return float(np.sum(self.marginal_xi))

def density_frame(rho, q_points, xi_points):
    """ρ(q, ξ) as a table: one row per ξ point, one column per q point,
    headed by the q coordinates.
    """
    frame = pd.DataFrame(np.asarray(rho).T, columns=["%.17g" % q for q in q_points])
    frame.insert(0, "xi", np.asarray(xi_points))
    return frame


def density(state):
    """Density field of a normalized state."""
    return DensityField(state.full ** 2, state.q_weights, state.xi_weights)


def participation_ratio(p, tol=NORM_TOL):
    """PR = 1 / Σ p², for a distribution p over the grid."""
    p = np.asarray(p, dtype=float)
    if p.size == 0 or np.any(p < -tol) or abs(np.sum(p) - 1.0) > tol:
        raise ValueError("participation_ratio needs a normalized distribution")
    return float(1.0 / np.sum(p ** 2))


def _amplitudes(state):
    """Weighted (q × ξ) amplitude matrix, whose singular values are the
    Schmidt coefficients in the quadrature metric.
    """
    if isinstance(state, AssembledState):
        return (np.sqrt(state.q_weights)[:, None] * state.full
                * np.sqrt(state.xi_weights)[None, :])
    return np.asarray(state, dtype=float)


def schmidt_values(state):
    """Singular values of the amplitude matrix, descending."""
    values = sla.svdvals(_amplitudes(state))
    if values.size == 0 or values[0] == 0.0:
        raise ValueError("the state is zero")
    return values


def schmidt_rank(state, tol=SCHMIDT_TOL):
    """Number of Schmidt values above tol times the leading one."""
    return numerical_rank(schmidt_values(state), tol)


def entanglement_entropy(state):
    """Von Neumann entropy of the Schmidt weights; 0 for product states."""
    s = schmidt_values(state)
    weights = s ** 2 / np.sum(s ** 2)
    weights = weights[weights > 0]
    return float(max(0.0, -np.sum(weights * np.log(weights))))


def complexity_measure(n_realizations):
    """C = ln N, zero for a single realisation."""
    if n_realizations < 1:
        raise ValueError("at least one realisation is needed, got %r" % (n_realizations,))
    return float(np.log(n_realizations))


def complexity_entropy(alpha):
    """−Σ α ln α; equals ln N for N equiprobable realisations."""
    alpha = np.asarray(alpha, dtype=float)
    alpha = alpha[alpha > 0]
    return float(max(0.0, -np.sum(alpha * np.log(alpha))))
