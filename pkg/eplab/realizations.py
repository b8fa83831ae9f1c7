# encoding: utf-8
u"""
 Realisations: groups of eigenstates sharing a centre of reduction, and
 the intermediate (delocalized) realisation between them.

 Each state is keyed by the argmax of its ξ marginal unless its
 participation ratio reaches the threshold τ, in which case it belongs to
 the intermediate realisation. Probabilities follow one of three rules:

     uniform   α_j = 1 / N_R
     grouped   α_j = N_j / Σ N_j
     born      α_j ∝ mass of the intermediate density in the cell of j
"""
import numpy as np

from .BaseRecord import BaseRecord, frozen
from .RecordList import RecordList
from .assembly import density, participation_ratio
from .exceptions import DegenerateMatching, ShapeMismatch
from .model import PERIODIC

UNIFORM = "uniform"
GROUPED = "grouped"
BORN = "born"
PROB_MODES = (UNIFORM, GROUPED, BORN)

REGULAR = "regular"
INTERMEDIATE = "intermediate"


def default_threshold(n_g):
    """τ = N_g/3, or the midpoint of (1, N_g) on grids too small for it."""
    tau = n_g / 3.0
    return tau if tau > 1.0 else 0.5 * (1.0 + n_g)


class Realization(BaseRecord):
    """One realisation: a centre of reduction and its member states."""

    _FIELDS = ("id", "kind", "center_index", "center_coord", "members")

    def __init__(self, id, center_index, center_coord, members, kind=REGULAR):
        self.id = int(id)
        self.kind = kind
        self.center_index = int(center_index)
        self.center_coord = float(center_coord)
        self.members = tuple(int(m) for m in members)
        self.label = "%s@%d" % (kind, self.center_index)
        self._seal()

    @property
    def count(self):
        """N_j"""
        return len(self.members)


class RealizationList(RecordList):
    """Realisations, ordered by centre index."""

    _CONTAINS = Realization


class RealizationSet(BaseRecord):
    """Partition of the states into regular groups and the intermediate set."""

    _FIELDS = ("groups", "intermediate", "pr_threshold", "participation",
               "n_realizations", "group_counts", "alpha")

    def __init__(self, groups, intermediate, xi_grid, densities, participation,
                 pr_threshold, alpha=None):
        self.groups = groups
        self.intermediate = tuple(int(i) for i in intermediate)
        self.xi_grid = xi_grid
        self.densities = tuple(densities)
        self.participation = frozen(participation)
        self.pr_threshold = float(pr_threshold)
        self.alpha = dict(alpha or {})
        self.id = "realizations[%d]" % self.n_realizations
        self._seal()

    @property
    def realizations(self):
        """What the beat draws from: the regular groups, or the single
        intermediate realisation when nothing is localized.
        """
        if len(self.groups):
            return self.groups
        index = int(np.argmax(self.intermediate_density()))
        single = Realization(0, index, self.xi_grid.points[index], self.intermediate,
                             kind=INTERMEDIATE)
        return RealizationList([single])

    @property
    def n_realizations(self):
        return len(self.groups) if len(self.groups) else 1

    @property
    def group_counts(self):
        return [r.count for r in self.realizations]

    @property
    def centers(self):
        return np.array([r.center_index for r in self.realizations], dtype=int)

    def intermediate_density(self):
        """Mean ξ density (per unit ξ) of the intermediate states, or None."""
        if not self.intermediate:
            return None
        return np.mean([self.densities[i].density_xi for i in self.intermediate], axis=0)

    def realization_density(self, j):
        """ρ_j(q, ξ): mean density of the members of realisation j."""
        members = self.realizations[j].members
        return np.mean([self.densities[i].rho for i in members], axis=0)

    def with_alpha(self, mode, alpha):
        """Copy of the set with probabilities for `mode` attached."""
        probabilities = dict(self.alpha)
        probabilities[mode] = [float(a) for a in alpha]
        return RealizationSet(self.groups, self.intermediate, self.xi_grid,
                              self.densities, self.participation, self.pr_threshold,
                              probabilities)


def group_realizations(states, xi_grid, pr_threshold=None):
    """Group assembled states by their centre of reduction."""
    if not states:
        raise ShapeMismatch("no states to group")
    densities = [density(s) for s in states]
    n_g = densities[0].marginal_xi.size
    tau = default_threshold(n_g) if pr_threshold is None else float(pr_threshold)

    participation = []
    keyed, intermediate = {}, []
    for i, d in enumerate(densities):
        p = d.marginal_xi / d.total
        pr = participation_ratio(p)
        participation.append(pr)
        if pr >= tau:
            intermediate.append(i)
        else:
            # argmax returns the lowest index on ties
            keyed.setdefault(int(np.argmax(p)), []).append(i)

    groups = RealizationList()
    for j, center in enumerate(sorted(keyed)):
        groups.append(Realization(j, center, xi_grid.points[center], keyed[center]))
    return RealizationSet(groups, intermediate, xi_grid, densities, participation, tau)


def cells(xi_grid, centers):
    """Nearest-centre partition of the grid: the cell index of every point.

    Ties go to the lower centre. Distances wrap on periodic grids.
    """
    points = np.asarray(xi_grid.points)
    centers = np.asarray(centers, dtype=int)
    d = np.abs(points[:, None] - points[centers][None, :])
    if xi_grid.boundary == PERIODIC:
        length = len(xi_grid) * xi_grid.spacing
        d = np.minimum(d, length - d)
    return np.argmin(d, axis=1)


def cell_masses(xi_grid, centers, rho_xi):
    """Σ_{ξ in cell j} w_ξ ρ(ξ) for every centre."""
    owner = cells(xi_grid, centers)
    weighted = np.asarray(xi_grid.weights) * np.asarray(rho_xi, dtype=float)
    return np.bincount(owner, weights=weighted, minlength=len(centers))


def probabilities(rs, mode, intermediate_density=None):
    """Realisation probabilities α_j under one of the three rules."""
    n = rs.n_realizations
    if mode == UNIFORM:
        alpha = np.full(n, 1.0 / n)
    elif mode == GROUPED:
        counts = np.asarray(rs.group_counts, dtype=float)
        alpha = counts / np.sum(counts)
    elif mode == BORN:
        if intermediate_density is None:
            raise ValueError("born probabilities need an intermediate density")
        masses = cell_masses(rs.xi_grid, rs.centers, intermediate_density)
        total = np.sum(masses)
        if not total > 0:
            raise DegenerateMatching("the intermediate density has no mass in any cell")
        alpha = masses / total
    else:
        raise ValueError("unknown probability mode %r" % (mode,))
    return alpha


class BornMatch(BaseRecord):
    """Matching coefficients of the intermediate state onto the cells."""

    _FIELDS = ("coefficients", "indicator_coefficients", "alpha")

    def __init__(self, coefficients, indicator_coefficients):
        self.coefficients = frozen(coefficients)
        self.indicator_coefficients = frozen(indicator_coefficients)
        c2 = self.coefficients ** 2
        self.alpha = frozen(c2 / np.sum(c2))
        self.id = "born"
        self._seal()


def born_match(rs, psi0_intermediate, tol=1e-9):
    """C_j = Σ_{cell j} w ψ u_j with u_j the normalized cell-restricted state.

    |C_j|² is then the cell mass of |ψ|², and the projection onto the plain
    normalized cell indicator is reported alongside.
    """
    psi = np.asarray(psi0_intermediate, dtype=float)
    w = np.asarray(rs.xi_grid.weights)
    if abs(np.sum(w * psi ** 2) - 1.0) > tol:
        raise ValueError("the intermediate state is not normalized")
    owner = cells(rs.xi_grid, rs.centers)
    coefficients, indicator = [], []
    for j in range(rs.n_realizations):
        inside = owner == j
        mass = np.sum(w[inside] * psi[inside] ** 2)
        coefficients.append(np.sqrt(mass))
        indicator.append(np.sum(w[inside] * psi[inside]) / np.sqrt(np.sum(w[inside]))
                         if np.any(inside) else 0.0)
    if not np.any(np.asarray(coefficients) > 0):
        raise DegenerateMatching("all matching coefficients vanish")
    return BornMatch(coefficients, indicator)


class MixedDensity(BaseRecord):
    """ρ_ex(q, ξ) = Σ_j α_j ρ_j."""

    _FIELDS = ("mode", "marginal_xi")

    def __init__(self, rho_ex, mode, q_weights, xi_weights):
        self.rho_ex = frozen(rho_ex)
        self.mode = mode
        self.q_weights = frozen(q_weights)
        self.xi_weights = frozen(xi_weights)
        self.marginal_xi = frozen(self.xi_weights * (self.q_weights @ self.rho_ex))
        self.id = mode
        self._seal()

    @property
    def total(self):
        return float(np.sum(self.marginal_xi))


def mix_density(rs, states, mode):
    """Mixed observable density for the probabilities stored under mode."""
    if mode not in rs.alpha:
        raise ValueError("no probabilities computed for mode %r" % (mode,))
    alpha = np.asarray(rs.alpha[mode])
    if alpha.size != rs.n_realizations:
        raise ValueError("%d probabilities for %d realisations"
                         % (alpha.size, rs.n_realizations))
    if len(states) != len(rs.densities):
        raise ShapeMismatch("the states do not belong to this realisation set")
    rho = sum(a * rs.realization_density(j) for j, a in enumerate(alpha))
    return MixedDensity(rho, mode, states[0].q_weights, states[0].xi_weights)
