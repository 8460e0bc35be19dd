"""Intrinsic number of communities of an edge-probability matrix.

The count equals the number of vertices of the convex hull of the rows
of the eigenvector matrix for the nonzero eigenvalues.  Vertices are
found by measuring, for each distinct embedded row, its distance to the
hull of all the other rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModelError, ParameterError
from .linalg import symmetric_eigh
from .model import check_probability_matrix

__all__ = ["IncResult", "HullProjection", "hull_projection", "min_distance_to_hull",
           "intrinsic_num_communities"]


@dataclass(frozen=True)
class HullProjection:
    distance: float
    weights: np.ndarray
    gap: float
    iterations: int


def _affine_minimizer(Y):
    """Weights v (sum 1) minimizing ||v @ Y|| over the affine hull of the rows of Y."""
    k = Y.shape[0]
    kkt = np.zeros((k + 1, k + 1))
    kkt[:k, :k] = Y @ Y.T
    kkt[:k, k] = 1.0
    kkt[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    return sol[:k]


def _min_norm_point(Y, gap_tol, max_iter):
    # Wolfe's algorithm: keep a corral S of affinely independent points and
    # the convex weights w of the current iterate x = w @ Y[S].
    norms = np.einsum("ij,ij->i", Y, Y)
    S = [int(np.argmin(norms))]
    w = np.array([1.0])
    x = Y[S[0]].copy()
    eps = 1e-14
    for it in range(1, max_iter + 1):
        dots = Y @ x
        j = int(np.argmin(dots))
        gap = float(x @ x - dots[j])
        if gap <= gap_tol or j in S:
            return x, S, w, max(gap, 0.0), it
        S.append(j)
        w = np.append(w, 0.0)
        while True:
            v = _affine_minimizer(Y[S])
            if np.all(v > eps):
                w = v
                break
            # move from w towards v until a weight hits zero, then drop it
            neg = np.flatnonzero(v <= eps)
            den = w[neg] - v[neg]
            ratios = np.where(den > 0, w[neg] / np.where(den > 0, den, 1.0), 0.0)
            theta = min(1.0, float(ratios.min()))
            w = theta * v + (1.0 - theta) * w
            keep = w > eps
            if keep.all():
                keep[neg[int(np.argmin(ratios))]] = False
            S = [s for s, k in zip(S, keep) if k]
            w = w[keep]
            w = w / w.sum()
        x = w @ Y[S]
    dots = Y @ x
    return x, S, w, max(float(x @ x - dots.min()), 0.0), max_iter


def hull_projection(point, others, gap_tol=1e-12, max_iter=1000):
    """Euclidean projection of ``point`` onto conv(``others``).

    The returned ``gap`` is the Frank-Wolfe duality gap
    ``<x, x - y_min>`` at the returned iterate (``x`` the offset to the hull
    point); it bounds ``|x|^2 - dist^2`` from above.
    """
    p = np.asarray(point, dtype=float).ravel()
    Y = np.atleast_2d(np.asarray(others, dtype=float))
    if Y.size == 0:
        raise ParameterError("need at least one other point")
    if Y.shape[1] != p.size:
        raise ParameterError(f"dimension mismatch: point has {p.size} coordinates, others have {Y.shape[1]}")
    Y = Y - p
    scale = float(np.max(np.einsum("ij,ij->i", Y, Y)))
    x, S, w, gap, it = _min_norm_point(Y, gap_tol * max(scale, 1e-300), max_iter)
    weights = np.zeros(Y.shape[0])
    weights[S] = w
    return HullProjection(float(np.sqrt(x @ x)), weights, gap, it)


def min_distance_to_hull(point, others):
    """Distance from ``point`` to the convex hull of the rows of ``others``."""
    return hull_projection(point, others).distance


@dataclass(frozen=True, eq=False)
class IncResult:
    rank: int
    embedding: np.ndarray
    eigenvalues: np.ndarray
    vertex_count: int
    vertex_indices: list
    ambiguous_indices: list
    representatives: list
    rank_tol: float
    hull_tol: float

    def to_dict(self, include_embedding=False):
        doc = {
            "rank": self.rank,
            "vertex_count": self.vertex_count,
            "vertex_indices": list(self.vertex_indices),
            "ambiguous_indices": list(self.ambiguous_indices),
            "distinct_rows": len(self.representatives),
            "eigenvalues": self.eigenvalues.tolist(),
            "rank_tol": self.rank_tol,
            "hull_tol": self.hull_tol,
        }
        if include_embedding:
            doc["embedding"] = self.embedding.tolist()
        return doc

    def to_json(self, include_embedding=False, **kwargs):
        return json.dumps(self.to_dict(include_embedding), **kwargs)


def _dedup_rows(X, tol):
    reps = []
    for i, row in enumerate(X):
        if not any(np.linalg.norm(row - X[j]) <= tol for j in reps):
            reps.append(i)
    return reps


def intrinsic_num_communities(omega, rank_tol=None, hull_tol=1e-8, eig_method="auto"):
    """Rank, eigen-embedding and hull vertex count of a probability matrix.

    ``rank_tol`` defaults to 1e-8 times the spectral norm of ``omega``.
    Embedded rows whose hull distance falls in (hull_tol, 10 hull_tol] are
    still counted as vertices but listed in ``ambiguous_indices``.
    """
    omega = check_probability_matrix(omega, sym_tol=1e-9)
    if hull_tol <= 0 or (rank_tol is not None and rank_tol <= 0):
        raise ParameterError("tolerances must be positive")
    w, V = symmetric_eigh(omega, method=eig_method)
    norm = float(np.max(np.abs(w))) if w.size else 0.0
    if norm == 0.0:
        raise DegenerateModelError("zero matrix has no eigen-embedding")
    if rank_tol is None:
        rank_tol = 1e-8 * norm
    keep = np.abs(w) > rank_tol
    w, V = w[keep], V[:, keep]
    order = np.argsort(-np.abs(w), kind="stable")
    w, V = w[order], V[:, order]
    # sign convention: largest-magnitude entry of each eigenvector is positive
    idx = np.argmax(np.abs(V), axis=0)
    V = V * np.sign(V[idx, np.arange(V.shape[1])])
    r = int(w.size)

    reps = _dedup_rows(V, hull_tol)
    if len(reps) == 1:
        return IncResult(r, V, w, 1, list(reps), [], reps, float(rank_tol), float(hull_tol))
    pts = V[reps]
    vertices, ambiguous = [], []
    for k, rep in enumerate(reps):
        others = np.delete(pts, k, axis=0)
        d = min_distance_to_hull(pts[k], others)
        if d > hull_tol:
            vertices.append(rep)
            if d <= 10 * hull_tol:
                ambiguous.append(rep)
    return IncResult(r, V, w, len(vertices), vertices, ambiguous, reps, float(rank_tol), float(hull_tol))
