"""Self-contained symmetric eigensolvers for the small projected problems.

Implements the classic Householder reduction (tred2) and implicit-shift QL
iteration with eigenvector accumulation (tql2), so the Krylov inner solves
do not depend on an external LAPACK path.
"""

from __future__ import annotations

import numpy as np

_MAX_SWEEPS = 50


class TridiagError(RuntimeError):
    """QL iteration failed to converge (pathological input)."""


def tql2(diag: np.ndarray, off: np.ndarray, z: np.ndarray | None = None):
    """Eigen-decomposition of a symmetric tridiagonal matrix.

    ``diag`` has length n, ``off`` length n-1.  ``z`` is an initial basis
    (identity for plain tridiagonal input, or the tred2 accumulation); the
    returned eigenvectors are its columns rotated accordingly.  Eigenvalues
    come back ascending with matching eigenvector columns.
    """
    n = len(diag)
    if len(off) != n - 1:
        raise ValueError("off-diagonal length must be n - 1")
    d = np.array(diag, dtype=float)
    e = np.zeros(n)
    e[: n - 1] = off
    if z is None:
        z = np.eye(n)
    else:
        z = np.array(z, dtype=float)
    for l in range(n):
        for sweep in range(_MAX_SWEEPS + 1):
            # find a negligible off-diagonal element
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= np.finfo(float).eps * dd:
                    break
                m += 1
            if m == l:
                break
            if sweep == _MAX_SWEEPS:
                raise TridiagError("QL iteration did not converge")
            # Wilkinson shift
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s, c = 1.0, 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * col
                z[:, i] = c * z[:, i] - s * col
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    order = np.argsort(d, kind="stable")
    return d[order], z[:, order]


def tred2(a: np.ndarray):
    """Householder reduction of a symmetric matrix to tridiagonal form.

    Returns (d, e, q) with q orthogonal and q.T @ a @ q tridiagonal with
    diagonal d and off-diagonal e.
    """
    q = np.array(a, dtype=float)
    n = q.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = np.sum(np.abs(q[i, :i]))
            if scale == 0.0:
                e[i] = q[i, l]
            else:
                q[i, :i] /= scale
                h = np.dot(q[i, :i], q[i, :i])
                f = q[i, l]
                g = -np.sqrt(h) if f >= 0 else np.sqrt(h)
                e[i] = scale * g
                h -= f * g
                q[i, l] = f - g
                u = q[i, :i]
                q[:i, i] = u / h
                # p = A u / h restricted to the active block
                p = (np.tril(q[:i, :i]) @ u
                     + np.tril(q[:i, :i], -1).T @ u) / h
                hh = np.dot(p, u) / (h + h)
                p -= hh * u
                e[:i] = p
                q[:i, :i] -= np.tril(np.outer(u, p) + np.outer(p, u))
        else:
            e[i] = q[i, l]
        d[i] = h
    d[0] = 0.0
    e[0] = 0.0
    for i in range(n):
        if d[i] != 0.0:
            g = q[:i, :i].T @ q[i, :i]
            q[:i, :i] -= np.outer(q[:i, i], g)
        d[i] = q[i, i]
        q[i, i] = 1.0
        q[i, :i] = 0.0
        q[:i, i] = 0.0
    return d, e[1:], q


def symm_eigh(a: np.ndarray):
    """Full eigen-decomposition of a small dense symmetric matrix."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy(), np.ones((1, 1))
    d, e, q = tred2(a)
    return tql2(d, e, q)


def tridiag_eigs(alpha: np.ndarray, beta: np.ndarray, k: int):
    """Lowest ``k`` eigenpairs of the symmetric tridiagonal matrix."""
    vals, vecs = tql2(np.asarray(alpha, float), np.asarray(beta, float))
    k = min(k, len(vals))
    return vals[:k], vecs[:, :k]
