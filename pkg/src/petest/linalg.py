"""Symmetric eigendecomposition by cyclic Jacobi rotations."""

import numpy as np

from .errors import ParameterError

__all__ = ["jacobi_eigh", "symmetric_eigh", "spectral_norm", "JACOBI_MAX_N"]

JACOBI_MAX_N = 150


def jacobi_eigh(S, tol=1e-14, max_sweeps=100):
    """Eigenvalues and eigenvectors of a symmetric matrix.

    Cyclic-by-row Jacobi sweeps until the off-diagonal Frobenius mass
    falls below ``tol`` times the matrix norm.  Returns ``(w, V)`` with
    ``S = V diag(w) V'``, eigenvalues in ascending order.
    """
    a = np.array(S, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n and np.max(np.abs(a - a.T)) > 1e-9 * max(1.0, np.max(np.abs(a))):
        raise ParameterError("matrix must be symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if scale == 0.0 or n < 2:
        return np.diag(a).copy(), v

    for sweep in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = 100.0 * abs(apq)
                app, aqq = a[p, p], a[q, q]
                if sweep > 3 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    a[p, q] = a[q, p] = 0.0
                    continue
                if apq == 0.0:
                    continue
                diff = aqq - app
                if abs(diff) + g == abs(diff):
                    t = apq / diff
                else:
                    theta = 0.5 * diff / apq
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J' A J with J the (p, q) plane rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def symmetric_eigh(S, method="auto"):
    """``jacobi_eigh`` for small matrices, LAPACK beyond ``JACOBI_MAX_N``."""
    S = np.asarray(S, dtype=float)
    if method == "auto":
        method = "jacobi" if S.shape[0] <= JACOBI_MAX_N else "lapack"
    if method == "jacobi":
        return jacobi_eigh(S)
    if method == "lapack":
        return np.linalg.eigh((S + S.T) / 2)
    raise ParameterError(f"unknown eigensolver {method!r}")


def spectral_norm(S):
    """Largest absolute eigenvalue of a symmetric matrix."""
    w, _ = symmetric_eigh(S)
    return float(np.max(np.abs(w))) if w.size else 0.0
