# encoding: utf-8
u"""
 The auxiliary truncated system: all channels except mode 0.

 A ChannelOperator holds one level of the coupled-channel problem,

     [h_g + V_nn(ξ) + s_n] ψ_n(ξ) + Σ_{n'≠n} V_nn'(ξ) ψ_n'(ξ) = η ψ_n(ξ)

 with per-channel shifts s_n. At the first level s_n = ε_n − ε_0. Its
 head is channel 0, its tail the truncated system over channels n ≥ 1,
 itself a ChannelOperator (the next level of the hierarchy). The
 eigenvalues of the tail are the pole positions of the effective
 potential, with the shifts ε_n0 already absorbed.
"""
import numpy as np

from .BaseRecord import BaseRecord, frozen
from .exceptions import NumericalFailure, ShapeMismatch
from .linalg import diagonalize_sym
from .model import hamiltonian_g

RESIDUAL_TOL = 1e-9


class ChannelOperator(BaseRecord):
    """h_g plus per-channel shifts and local couplings V_nn'(ξ)."""

    _FIELDS = ("shifts", "include_cross")

    def __init__(self, hg, shifts, v, include_cross=True):
        hg = frozen(hg)
        shifts = frozen(shifts)
        v = np.array(v, dtype=float)
        n_c = shifts.size
        if v.shape != (n_c, n_c, hg.shape[0]):
            raise ShapeMismatch("couplings of shape %s do not fit %d channels on %d points"
                                % (v.shape, n_c, hg.shape[0]))
        if not include_cross and n_c > 2:
            # Keep V_0n and V_nn, drop V_nn' between nonzero channels
            keep = np.eye(n_c, dtype=bool)
            keep[0, :] = keep[:, 0] = True
            v[~keep] = 0.0
        self.hg = hg
        self.shifts = shifts
        self.v = frozen(v)
        self.include_cross = bool(include_cross)
        self.id = "channels[%d]" % n_c
        self._seal()

    @classmethod
    def from_problem(cls, spec, v, include_cross=True):
        """First level: shifts ε_n − ε_0."""
        eps = spec.modes.eps
        if v.n_tot != eps.size or v.n_g != spec.n_g:
            raise ShapeMismatch("coupling matrices do not match the problem")
        return cls(hamiltonian_g(spec), eps - eps[0], v.v, include_cross)

    @property
    def n_channels(self):
        return self.shifts.size

    @property
    def n_g(self):
        return self.hg.shape[0]

    def head(self):
        """Channel-0 block h_g + diag(V_00) + s_0."""
        return self.hg + np.diag(self.v[0, 0]) + self.shifts[0] * np.eye(self.n_g)

    def coupling_row(self):
        """V_0n(ξ) for n ≥ 1, shape (n_channels − 1, N_g)."""
        return np.array(self.v[0, 1:])

    def tail(self):
        """The truncated system over channels n ≥ 1."""
        if self.n_channels < 2:
            raise ShapeMismatch("no truncated sector exists below 2 channels")
        return ChannelOperator(self.hg, self.shifts[1:], self.v[1:, 1:], self.include_cross)

    def matrix(self):
        """Block matrix over (channel, ξ), exactly symmetric."""
        n_c, n_g = self.n_channels, self.n_g
        m = np.zeros((n_c * n_g, n_c * n_g))
        idx = np.arange(n_g)
        for n in range(n_c):
            rows = slice(n * n_g, (n + 1) * n_g)
            m[rows, rows] = self.hg + self.shifts[n] * np.eye(n_g)
            for k in range(n_c):
                m[n * n_g + idx, k * n_g + idx] += self.v[n, k]
        return 0.5 * (m + m.T)


class TruncatedSolution(BaseRecord):
    """Eigen-solutions η⁰_k, ψ⁰_k of the truncated system."""

    _FIELDS = ("dim", "eigvals", "shifts", "residual_bound")

    def __init__(self, matrix, eigvals, eigvecs, shifts, n_g):
        self.matrix = frozen(matrix)
        self.eigvals = frozen(eigvals)
        self.eigvecs = frozen(eigvecs)
        self.shifts = frozen(shifts)
        self.n_g = int(n_g)
        self.dim = self.eigvals.size
        self.residual_bound = float(np.max(np.linalg.norm(
            matrix @ eigvecs - eigvecs * eigvals, axis=0))) if self.dim else 0.0
        self.id = "truncated[%d]" % self.dim
        self._seal()

    @property
    def n_blocks(self):
        return self.shifts.size

    def block_vectors(self):
        """Eigenvectors as blocks, shape (n_blocks, N_g, dim)."""
        return self.eigvecs.reshape(self.n_blocks, self.n_g, self.dim)


def build_truncated(spec, v, include_cross=True):
    """Block operator L over modes n ≥ 1."""
    if spec.n_tot < 2:
        raise ShapeMismatch("no truncated sector exists for N_tot < 2")
    return ChannelOperator.from_problem(spec, v, include_cross).tail().matrix()


def solve_operator(operator, tol=RESIDUAL_TOL, method="auto"):
    """Diagonalize a ChannelOperator and certify the eigenpairs."""
    matrix = operator.matrix()
    eigvals, eigvecs = diagonalize_sym(matrix, tol=tol, method=method)
    solution = TruncatedSolution(matrix, eigvals, eigvecs, operator.shifts, operator.n_g)
    scale = np.linalg.norm(matrix)
    if solution.residual_bound > tol * max(scale, np.finfo(float).tiny):
        raise NumericalFailure("truncated eigenpairs have residual %g"
                               % solution.residual_bound)
    return solution


def solve_truncated(spec, v, include_cross=True, tol=RESIDUAL_TOL, method="auto"):
    """Build and diagonalize the truncated system of a problem."""
    if spec.n_tot < 2:
        raise ShapeMismatch("no truncated sector exists for N_tot < 2")
    operator = ChannelOperator.from_problem(spec, v, include_cross).tail()
    return solve_operator(operator, tol=tol, method=method)
