# encoding: utf-8
""" Dense symmetric kernels shared by the truncated, effective,
    spectrum and oracle modules.

    diagonalize_sym() uses cyclic Jacobi rotations for small matrices and
    LAPACK (through scipy) for larger ones; both paths return eigenvalues
    sorted ascending with orthonormal eigenvectors in the columns.
"""
import numpy as np
import scipy.linalg as sla

from .exceptions import NonSymmetric, NumericalFailure

JACOBI_MAX_DIM = 12  # "auto" switches to LAPACK above this size
JACOBI_MAX_SWEEPS = 100
JACOBI_THRESHOLD = 1e-12  # relative to the Frobenius norm
JACOBI_NEGLIGIBLE = 1e-18  # |a_pq| below this times |a_pp| + |a_qq| is zeroed
SYMMETRY_TOL = 1e-12
METHODS = ("auto", "jacobi", "lapack")


def check_symmetric(m, tol=SYMMETRY_TOL):
    """Raise NonSymmetric unless m equals its transpose within tol."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSymmetric("expected a square matrix, got shape %s" % (m.shape,))
    scale = max(1.0, np.max(np.abs(m))) if m.size else 1.0
    if m.size and np.max(np.abs(m - m.T)) > tol * scale:
        raise NonSymmetric("matrix is not symmetric within %g" % tol)
    return m


def _off_norm(a):
    return np.linalg.norm(a - np.diag(np.diag(a)))


def _jacobi(m):
    """Cyclic Jacobi sweeps over all (p, q) pairs."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    threshold = JACOBI_THRESHOLD * np.linalg.norm(a)
    for sweep in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= JACOBI_NEGLIGIBLE * (abs(a[p, p]) + abs(a[q, q])) or apq == 0.0:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta or 1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                pq = [p, q]
                cols = a[:, pq].copy()
                a[:, p] = c * cols[:, 0] - s * cols[:, 1]
                a[:, q] = s * cols[:, 0] + c * cols[:, 1]
                rows = a[pq, :].copy()
                a[p, :] = c * rows[0] - s * rows[1]
                a[q, :] = s * rows[0] + c * rows[1]
                a[p, q] = a[q, p] = 0.0

                vecs = v[:, pq].copy()
                v[:, p] = c * vecs[:, 0] - s * vecs[:, 1]
                v[:, q] = s * vecs[:, 0] + c * vecs[:, 1]
    else:
        if _off_norm(a) > threshold:
            raise NumericalFailure("Jacobi did not converge in %d sweeps" % JACOBI_MAX_SWEEPS)
    return np.diag(a).copy(), v


def diagonalize_sym(m, tol=1e-9, method="auto"):
    """Eigen-decompose a real symmetric matrix.

    Returns (values, vectors), values ascending, vectors orthonormal
    column-wise, such that ||m - Q diag(values) Q^T||_F <= tol ||m||_F.
    """
    if method not in METHODS:
        raise ValueError("unknown eigensolver %r" % (method,))
    m = check_symmetric(m)
    n = m.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    m = 0.5 * (m + m.T)

    if method == "jacobi" or (method == "auto" and n <= JACOBI_MAX_DIM):
        values, vectors = _jacobi(m)
    else:
        try:
            values, vectors = sla.eigh(m)
        except sla.LinAlgError as e:
            raise NumericalFailure("LAPACK eigh failed: %s" % e)

    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]

    norm = np.linalg.norm(m)
    if norm > 0:
        error = np.linalg.norm(m - (vectors * values) @ vectors.T)
        if error > tol * norm:
            raise NumericalFailure("reconstruction error %g exceeds %g" % (error / norm, tol))
    if np.max(np.abs(vectors.T @ vectors - np.eye(n))) > tol:
        raise NumericalFailure("eigenvectors are not orthonormal within %g" % tol)
    return values, vectors


def symmetric_det(m):
    """Determinant of a symmetric matrix from its LDL^T factorization.

    The permuted unit triangular factor has determinant +-1 and enters
    squared, so det(m) is the product of the 1x1 and 2x2 pivot blocks.
    """
    m = np.asarray(m, dtype=float)
    if m.shape[0] == 0:
        return 1.0
    _, d, _ = sla.ldl(m, lower=True)
    n = d.shape[0]
    det = 1.0
    i = 0
    while i < n:
        if i + 1 < n and d[i + 1, i] != 0.0:
            det *= d[i, i] * d[i + 1, i + 1] - d[i + 1, i] * d[i, i + 1]
            i += 2
        else:
            det *= d[i, i]
            i += 1
    return det


def numerical_rank(values, tol):
    """Number of entries of `values` above tol times the leading one."""
    values = np.abs(np.asarray(values, dtype=float))
    if values.size == 0:
        return 0
    leading = np.max(values)
    if leading == 0.0:
        return 0
    return int(np.sum(values > tol * leading))
