# encoding: utf-8
u"""
 The discretized two-field problem.

 The ξ field ("measuring" medium) lives on a 1-D grid, the q field
 ("measured" field) is expanded in a mode basis φ_n(q) with energies ε_n.
 The coupling kernel V_eg(q, ξ) is projected on pairs of modes, which
 eliminates q in favour of mode indices:

     V_nn'(ξ) = Σ_q w_q φ_n(q) V_eg(q, ξ) φ_n'(q)

 Everything here is dimensionless and real.
"""
import numpy as np

from .BaseRecord import BaseRecord, frozen
from .config import validate_config
from .exceptions import ConfigError, ShapeMismatch

DIRICHLET = "dirichlet"
PERIODIC = "periodic"
BOUNDARIES = (DIRICHLET, PERIODIC)

GAUSSIAN_BUMPS = "gaussian_bumps"
GIVEN = "given"

GAUSSIAN_ATTRACTIVE = "gaussian_attractive"
CONSTANT = "constant"
CUSTOM_SAMPLED = "custom_sampled"
KERNEL_KINDS = (GAUSSIAN_ATTRACTIVE, CONSTANT, CUSTOM_SAMPLED)

NORMALIZATION_TOL = 1e-10
UNIFORMITY_TOL = 1e-9


class Grid(BaseRecord):
    """Ordered grid points with quadrature weights."""

    _FIELDS = ("points", "weights", "boundary")

    def __init__(self, points, weights, boundary=DIRICHLET):
        points = frozen(points)
        weights = frozen(weights)
        if boundary not in BOUNDARIES:
            raise ShapeMismatch("unknown boundary %r" % (boundary,))
        if points.ndim != 1 or points.size < 2:
            raise ShapeMismatch("a grid needs at least 2 points")
        if weights.shape != points.shape:
            raise ShapeMismatch("one weight per grid point expected")
        if np.any(np.diff(points) <= 0):
            raise ShapeMismatch("grid points must be strictly increasing")
        if np.any(weights <= 0):
            raise ShapeMismatch("quadrature weights must be positive")
        self.points = points
        self.weights = weights
        self.boundary = boundary
        self.id = "%s[%d]" % (boundary, points.size)
        self._seal()

    @classmethod
    def uniform(cls, n, span=(0.0, 1.0), boundary=DIRICHLET):
        """Evenly spaced grid on span.

        Dirichlet grids include both ends and carry trapezoid weights,
        periodic grids leave out the right end (it is the left one).
        """
        lo, hi = float(span[0]), float(span[1])
        if boundary == PERIODIC:
            h = (hi - lo) / n
            points = lo + h * np.arange(n)
            weights = np.full(n, h)
        else:
            points = np.linspace(lo, hi, n)
            h = (hi - lo) / (n - 1)
            weights = np.full(n, h)
            weights[0] = weights[-1] = 0.5 * h
        return cls(points, weights, boundary)

    def __len__(self):
        return self.points.size

    @property
    def spacing(self):
        """Grid spacing; the grid must be uniform."""
        steps = np.diff(self.points)
        if np.max(np.abs(steps - steps[0])) > UNIFORMITY_TOL * abs(steps[0]):
            raise ShapeMismatch("the grid is not uniform")
        return float(steps[0])

    def refined(self, factor):
        """Uniform grid with `factor` times finer spacing on the same span."""
        if self.boundary == PERIODIC:
            span = (self.points[0], self.points[0] + len(self) * self.spacing)
            return Grid.uniform(factor * len(self), span, PERIODIC)
        return Grid.uniform(factor * (len(self) - 1) + 1,
                            (self.points[0], self.points[-1]), DIRICHLET)


class ModeFamily(BaseRecord):
    """Declaration of a mode basis, turned into a ModeBasis by free_modes()."""

    _FIELDS = ("kind", "n_tot", "delta_eps", "width_factor")

    def __init__(self, kind, n_tot, q_grid, delta_eps=1.0, width_factor=1.5,
                 eps=None, phi=None):
        if kind not in (GAUSSIAN_BUMPS, GIVEN):
            raise ConfigError("modes.kind", "unknown mode kind %r" % (kind,))
        self.kind = kind
        self.n_tot = int(n_tot)
        self.q_grid = q_grid
        self.delta_eps = float(delta_eps)
        self.width_factor = float(width_factor)
        self.eps = None if eps is None else frozen(eps)
        self.phi = None if phi is None else frozen(phi)
        self.id = kind
        self._seal()


class ModeBasis(BaseRecord):
    """Mode energies ε_n and normalized mode samples φ_n(q)."""

    _FIELDS = ("eps", "phi")

    def __init__(self, eps, phi, q_grid):
        eps = frozen(eps)
        phi = frozen(phi)
        if phi.shape != (eps.size, len(q_grid)):
            raise ShapeMismatch("expected %d modes of %d samples, got %s"
                                % (eps.size, len(q_grid), phi.shape))
        if np.any(np.diff(eps) < 0):
            raise ShapeMismatch("mode energies must be nondecreasing")
        norms = np.einsum("q,nq,nq->n", q_grid.weights, phi, phi)
        if np.any(np.abs(norms - 1.0) > NORMALIZATION_TOL):
            raise ShapeMismatch("modes are not normalized")
        self.eps = eps
        self.phi = phi
        self.q_grid = q_grid
        self.id = "modes[%d]" % eps.size
        self._seal()

    @property
    def n_tot(self):
        return self.eps.size

    @property
    def eps0(self):
        return float(self.eps[0])


class CouplingSpec(BaseRecord):
    """The coupling kernel V_eg(q, ξ)."""

    _FIELDS = ("kind", "g", "sigma")

    def __init__(self, kind=GAUSSIAN_ATTRACTIVE, g=1.0, sigma=0.1, samples=None):
        if kind not in KERNEL_KINDS:
            raise ConfigError("coupling.kind", "unknown kernel kind %r" % (kind,))
        if kind == CUSTOM_SAMPLED and samples is None:
            raise ConfigError("coupling.samples", "custom_sampled needs samples")
        self.kind = kind
        self.g = float(g)
        self.sigma = float(sigma)
        self.samples = None if samples is None else frozen(samples)
        self.id = kind
        self._seal()

    def kernel(self, q_grid, xi_grid):
        """Kernel samples on the product grid, rows indexed by q."""
        shape = (len(q_grid), len(xi_grid))
        if self.kind == CUSTOM_SAMPLED:
            if self.samples.shape != shape:
                raise ShapeMismatch("kernel samples have shape %s, grids need %s"
                                    % (self.samples.shape, shape))
            return np.array(self.samples)
        if self.kind == CONSTANT:
            return np.full(shape, -self.g)
        dq = q_grid.points[:, None] - xi_grid.points[None, :]
        return -self.g * np.exp(-dq ** 2 / (2.0 * self.sigma ** 2))


class ProblemSpec(BaseRecord):
    """Full definition of the two fields, grid, mode basis and coupling."""

    _FIELDS = ("xi_grid", "mode_family", "coupling", "g_stiffness", "g_potential")

    def __init__(self, xi_grid, mode_family, coupling, g_stiffness, g_potential=None):
        if g_potential is None:
            g_potential = np.zeros(len(xi_grid))
        g_potential = frozen(g_potential)
        if g_potential.shape != (len(xi_grid),):
            raise ShapeMismatch("g_potential needs %d samples" % len(xi_grid))
        if mode_family.n_tot < 2:
            raise ConfigError("modes.N_tot", "at least 2 modes are needed")
        if g_stiffness < 0:
            raise ConfigError("hg.stiffness", "stiffness must not be negative")
        self.xi_grid = xi_grid
        self.mode_family = mode_family
        self.coupling = coupling
        self.g_stiffness = float(g_stiffness)
        self.g_potential = g_potential
        self.id = "problem"
        self._modes = None
        self._seal()

    @property
    def n_g(self):
        return len(self.xi_grid)

    @property
    def n_tot(self):
        return self.mode_family.n_tot

    @property
    def modes(self):
        """The ModeBasis declared by mode_family (built once)."""
        if self._modes is None:
            object.__setattr__(self, "_modes", free_modes(self))
        return self._modes


class CouplingMatrices(BaseRecord):
    """Projected couplings V_nn'(ξ), indexed (n, n', ξ)."""

    _FIELDS = ("v",)

    def __init__(self, v):
        v = frozen(v)
        if v.ndim != 3 or v.shape[0] != v.shape[1]:
            raise ShapeMismatch("expected an (N_tot, N_tot, N_g) array")
        self.v = v
        self.id = "V%s" % (v.shape,)
        self._seal()

    @property
    def n_tot(self):
        return self.v.shape[0]

    @property
    def n_g(self):
        return self.v.shape[2]

    def diagonal(self, n):
        """V_nn(ξ)."""
        return self.v[n, n]


def build_problem(config):
    """Build a validated ProblemSpec from a configuration document."""
    config = validate_config(config)
    grid = config["grid"]
    xi_grid = Grid.uniform(grid["N_g"], grid["span"], grid["boundary"])

    modes = config["modes"]
    q_span = modes["q_span"] or grid["span"]
    q_grid = Grid.uniform(modes["N_q"], q_span, DIRICHLET)
    family = ModeFamily(modes["kind"], modes["N_tot"], q_grid,
                        delta_eps=modes["delta_eps"],
                        width_factor=modes["width_factor"],
                        eps=modes["eps"], phi=modes["phi"])

    c = config["coupling"]
    coupling = CouplingSpec(c["kind"], c["g"], c["sigma"], c["samples"])

    hg = config["hg"]
    potential = np.zeros(len(xi_grid))
    if hg["potential"] is not None:
        potential += np.asarray(hg["potential"], dtype=float)
    for well in hg["wells"]:
        potential -= well["depth"] * np.exp(
            -(xi_grid.points - well["center"]) ** 2 / (2.0 * well["width"] ** 2))

    spec = ProblemSpec(xi_grid, family, coupling, hg["stiffness"], potential)
    try:
        spec.modes
    except ShapeMismatch as e:
        raise ConfigError("modes", str(e))
    return spec


def hamiltonian_g(spec):
    """h_g as a matrix: stiffness times the 3-point Laplacian (-d²/dξ²)
    plus the external potential on the diagonal.
    """
    grid = spec.xi_grid
    n = len(grid)
    h = grid.spacing
    k = spec.g_stiffness / (h * h)
    m = np.zeros((n, n))
    idx = np.arange(n)
    m[idx, idx] = 2.0 * k
    if grid.boundary == PERIODIC:
        # n == 2 wraps onto the same neighbour twice
        np.add.at(m, (idx, (idx + 1) % n), -k)
        np.add.at(m, ((idx + 1) % n, idx), -k)
    else:
        m[idx[:-1], idx[1:]] = -k
        m[idx[1:], idx[:-1]] = -k
    m[idx, idx] += spec.g_potential
    return m


def free_modes(spec):
    """Mode energies and normalized samples declared by the problem."""
    family = spec.mode_family
    q_grid = family.q_grid
    w = q_grid.weights
    if family.kind == GIVEN:
        eps = family.eps
        phi = np.array(family.phi)
    else:
        n = np.arange(family.n_tot)
        lo, hi = q_grid.points[0], q_grid.points[-1]
        spacing = (hi - lo) / family.n_tot
        centers = lo + (n + 0.5) * spacing
        width = family.width_factor * spacing
        phi = np.exp(-(q_grid.points[None, :] - centers[:, None]) ** 2 / (2.0 * width ** 2))
        eps = n * family.delta_eps

    norms = np.sqrt(np.einsum("q,nq,nq->n", w, phi, phi))
    if np.any(norms == 0):
        raise ShapeMismatch("mode %d is identically zero" % int(np.argmin(norms)))
    return ModeBasis(eps, phi / norms[:, None], q_grid)


def mode_overlaps(basis):
    """Quadrature Gram matrix <φ_n, φ_n'>."""
    w = basis.q_grid.weights
    return np.einsum("q,nq,mq->nm", w, basis.phi, basis.phi)


def project_coupling(basis, coupling, xi_grid):
    """Project the kernel on mode pairs: V_nn'(ξ)."""
    kernel = coupling.kernel(basis.q_grid, xi_grid)
    w = basis.q_grid.weights
    v = np.einsum("q,nq,qx,mq->nmx", w, basis.phi, kernel, basis.phi)
    return CouplingMatrices(0.5 * (v + v.transpose(1, 0, 2)))
