# encoding: utf-8
u"""
 All real roots of the characteristic function F(η).

 The rational eigenproblem [h0 + Σ_k F_k F_kᵀ / (η − p_k)] x = η x is
 linearized exactly as the symmetric block matrix

     | h0    W       |      W = [F_1 ... F_P]   (rank-revealing residue factors)
     | Wᵀ    diag(p) |

 whose eigenvalues are the roots. A bracketed scan of F between adjacent
 poles is kept as an independent check.
"""
import warnings

import numpy as np
from scipy.optimize import brentq

from .BaseRecord import BaseRecord, frozen
from .effective import ROOT_TOL, scan_characteristic
from .exceptions import NumericalFailure
from .linalg import diagonalize_sym

SCAN_SAMPLES = 2000
SCAN_XTOL = 1e-12


class Linearization(BaseRecord):
    """Symmetric linearization of an effective potential."""

    _FIELDS = ("matrix", "column_poles")

    def __init__(self, matrix, n_g, column_poles):
        self.matrix = frozen(matrix)
        self.n_g = int(n_g)
        self.column_poles = frozen(column_poles, dtype=int)
        self.id = "linearization[%d]" % self.matrix.shape[0]
        self._seal()


def linearize_ep(ep):
    """Block matrix [[h0, W], [Wᵀ, diag(p_k)]] of size N_g + Σ rank(R_k)."""
    n_g = ep.n_g
    columns = [f for f in ep.factors if f.shape[1]]
    column_poles = np.concatenate(
        [np.full(f.shape[1], k) for k, f in enumerate(ep.factors) if f.shape[1]]
        or [np.zeros(0, dtype=int)])
    w = np.hstack(columns) if columns else np.zeros((n_g, 0))
    r = w.shape[1]
    m = np.zeros((n_g + r, n_g + r))
    m[:n_g, :n_g] = ep.h0
    m[:n_g, n_g:] = w
    m[n_g:, :n_g] = w.T
    m[n_g + np.arange(r), n_g + np.arange(r)] = ep.poles[column_poles]
    return Linearization(0.5 * (m + m.T), n_g, column_poles)


class SpectrumResult(BaseRecord):
    """Certified roots η_i, vectors ψ_0i and the root/pole accounting."""

    _FIELDS = ("roots", "energies", "vectors", "counts", "excluded",
               "decoupled", "eps0", "span", "pole_guard")

    def __init__(self, roots, vectors, ep, excluded=()):
        self.roots = frozen(roots)
        self.vectors = frozen(vectors).reshape(self.roots.size, ep.n_g)
        self.eps0 = ep.eps0
        self.energies = frozen(self.roots + ep.eps0)
        self.span = ep.span
        self.pole_guard = ep.pole_guard
        self.rank_tol = ep.rank_tol
        self.n_g = ep.n_g
        self.excluded = tuple(excluded)
        # Poles carrying fewer independent residues than merged raw poles
        # leave eigenvalues of the full problem in the truncated sector
        lost = ep.multiplicities - ep.ranks
        self.decoupled = frozen(np.repeat(ep.poles, lost))
        rank_sum = int(np.sum(ep.ranks))
        n_distinct = int(ep.poles.size)
        generic = ep.n_g * (ep.n_e * ep.n_g + 1)
        self.counts = {
            "n_roots": int(self.roots.size),
            "n_poles": int(ep.raw_poles.size),
            "n_distinct_poles": n_distinct,
            "ranks": [int(r) for r in ep.ranks],
            "rank_sum": rank_sum,
            "rank_accounting": ep.n_g + rank_sum,
            "degree_bound": ep.n_g * (n_distinct + 1),
            "generic_count": generic,
            "paper_count": generic,
            "linear_count": (ep.n_e + 1) * ep.n_g,
            "n_excluded": len(self.excluded),
            "n_decoupled": int(self.decoupled.size),
            "all_full_rank": bool(np.all(ep.ranks == ep.n_g)),
        }
        self.id = "spectrum[%d]" % self.roots.size
        self._seal()

    @property
    def all_energies(self):
        """Root energies together with decoupled pole energies, sorted.

        This is the set the direct diagonalization of the full problem
        reproduces.
        """
        return np.sort(np.concatenate([self.energies, self.decoupled + self.eps0]))

    @property
    def summary(self):
        """The spectrum.json payload."""
        return {
            "roots": self.roots, "energies": self.energies, "eps0": self.eps0,
            "counts": self.counts, "excluded": list(self.excluded),
            "decoupled": self.decoupled, "span": self.span,
        }


def _canonical_sign(x):
    """Flip x so that its largest-magnitude entry is positive."""
    k = int(np.argmax(np.abs(x)))
    return -x if x[k] < 0 else x


def find_roots(ep, tol=1e-9, method="auto"):
    """All real roots of F with their channel-0 eigenvectors.

    Roots at a coupled pole (within the guard) are excluded and reported.
    Every kept root is certified by its residual in the effective equation.
    """
    lin = linearize_ep(ep)
    values, vectors = diagonalize_sym(lin.matrix, tol=tol, method=method)
    coupled = ep.poles[ep.coupled]
    roots, kept, excluded = [], [], []
    for i, eta in enumerate(values):
        x = vectors[:ep.n_g, i]
        norm = np.linalg.norm(x)
        if coupled.size:
            k = int(np.argmin(np.abs(coupled - eta)))
            if abs(eta - coupled[k]) <= ep.pole_guard or norm == 0.0:
                excluded.append({"eta": float(eta), "pole": float(coupled[k]),
                                 "reason": "root at pole"})
                continue
        x = _canonical_sign(x / norm)
        residual = ep.residual(eta, x)
        if residual > ROOT_TOL * ep.span:
            raise NumericalFailure("root eta=%r failed certification (residual %g)"
                                   % (float(eta), residual))
        roots.append(eta)
        kept.append(x)
    if excluded:
        warnings.warn("%d roots coincide with poles and were excluded" % len(excluded),
                      RuntimeWarning)
    return SpectrumResult(roots, np.array(kept), ep, excluded)


class AccountingReport(BaseRecord):
    """Measured root count against the rank accounting and the degree counts."""

    _FIELDS = ("n_roots", "rank_accounting", "degree_bound", "generic_count", "paper_count",
               "linear_count", "gap", "verdicts")

    def __init__(self, counts):
        self.n_roots = counts["n_roots"]
        self.rank_accounting = counts["rank_accounting"]
        self.degree_bound = counts["degree_bound"]
        self.generic_count = self.paper_count = counts["generic_count"]
        self.linear_count = counts["linear_count"]
        self.gap = self.generic_count - self.n_roots
        attained = self.n_roots == self.degree_bound
        measured_ok = self.n_roots + counts["n_excluded"] == self.rank_accounting
        self.verdicts = {
            "measured = rank accounting": "yes" if measured_ok else "no",
            "degree bound attained iff all residues full-rank": "%s (attained=%s, all_full_rank=%s)" % (
                "consistent" if attained == counts["all_full_rank"] else "inconsistent",
                attained, counts["all_full_rank"]),
            "generic count": "attained" if self.gap == 0 else "gap of %d roots" % self.gap,
        }
        self.consistent = measured_ok and attained == counts["all_full_rank"]
        self.id = self.n_roots
        self._seal()


def count_accounting(sr):
    """Confront the measured root count with the degree counts."""
    return AccountingReport(sr.counts)


def scan_roots(ep, samples=SCAN_SAMPLES, xtol=SCAN_XTOL):
    """Sign-change roots of F, bracketed between adjacent poles."""
    etas, values, intervals = scan_characteristic(ep, samples)
    roots = []
    for i in range(len(etas) - 1):
        if intervals[i] != intervals[i + 1]:
            continue
        a, b = etas[i], etas[i + 1]
        fa, fb = values[i], values[i + 1]
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0.0:
            roots.append(brentq(ep.characteristic, a, b, xtol=xtol))
    if len(etas) and values[-1] == 0.0:
        roots.append(etas[-1])
    return np.array(sorted(roots))
