"""Networks, MMSBM parameters and seeded network generation."""

from __future__ import annotations

import functools
import io
import os
from dataclasses import dataclass

import numpy as np

from .errors import EdgeListParseError, ParameterError

__all__ = [
    "AdjacencyMatrix",
    "FixedMembership",
    "PureMembership",
    "DirichletMembership",
    "MmsbmParams",
    "as_adjacency",
    "make_rng",
    "sample_memberships",
    "sample_network",
    "generate_network",
    "omega_matrix",
    "centered_signal_matrix",
    "check_probability_matrix",
    "read_edgelist",
    "write_edgelist",
    "parse_edgelist",
    "format_edgelist",
    "params_to_dict",
    "params_from_dict",
    "balanced_pure_memberships",
]

_STOCHASTIC_TOL = 1e-12
_MASK64 = (1 << 64) - 1


def _readonly(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AdjacencyMatrix:
    """Symmetric, hollow, 0/1 adjacency matrix of an undirected network."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError(f"adjacency must be square, got shape {a.shape}")
        if a.shape[0] < 2:
            raise ParameterError("adjacency needs at least 2 nodes")
        if not np.all((a == 0) | (a == 1)):
            raise ParameterError("adjacency entries must be 0 or 1")
        if np.any(np.diag(a) != 0):
            raise ParameterError("adjacency must have a zero diagonal")
        if not np.array_equal(a, a.T):
            raise ParameterError("adjacency must be symmetric")
        object.__setattr__(self, "entries", _readonly(a.astype(np.uint8)))

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def degrees(self):
        return self.entries.sum(axis=1, dtype=np.int64)

    @property
    def edge_count(self):
        return int(self.degrees.sum() // 2)

    def edges(self):
        """Upper-triangle edges (i < j) in row-major order."""
        i, j = np.nonzero(np.triu(self.entries, 1))
        return list(zip(i.tolist(), j.tolist()))

    @classmethod
    def from_edges(cls, n, edges):
        a = np.zeros((n, n), dtype=np.uint8)
        for i, j in edges:
            a[i, j] = a[j, i] = 1
        return cls(a)

    def permuted(self, perm):
        perm = np.asarray(perm)
        return AdjacencyMatrix(self.entries[np.ix_(perm, perm)])

    def __eq__(self, other):
        if not isinstance(other, AdjacencyMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())


def as_adjacency(A):
    if isinstance(A, AdjacencyMatrix):
        return A
    return AdjacencyMatrix(np.asarray(A))


# ----------------------------------------------------------------------------
# Membership specifications


def _check_stochastic_rows(pi, name="membership matrix"):
    if pi.ndim != 2:
        raise ParameterError(f"{name} must be 2-D, got shape {pi.shape}")
    if np.any(~np.isfinite(pi)) or np.any(pi < 0):
        raise ParameterError(f"{name} has negative or non-finite entries")
    dev = np.abs(pi.sum(axis=1) - 1.0)
    if dev.size and dev.max() > _STOCHASTIC_TOL:
        row = int(dev.argmax())
        raise ParameterError(f"row {row} of {name} sums to {pi[row].sum()!r}, not 1")


@dataclass(frozen=True, eq=False)
class FixedMembership:
    """A given n-by-K membership matrix Pi (rows on the simplex)."""

    pi: np.ndarray

    def __post_init__(self):
        pi = np.asarray(self.pi, dtype=float)
        _check_stochastic_rows(pi)
        object.__setattr__(self, "pi", _readonly(pi))

    @property
    def K(self):
        return self.pi.shape[1]

    def mean(self):
        return self.pi.mean(axis=0)

    def second_moment(self):
        return self.pi.T @ self.pi / self.pi.shape[0]

    def sample(self, n, rng):
        if self.pi.shape[0] != n:
            raise ParameterError(f"fixed membership has {self.pi.shape[0]} rows, need {n}")
        return np.array(self.pi)


@dataclass(frozen=True, eq=False)
class PureMembership:
    """Each node falls in exactly one community, drawn i.i.d. from ``h``."""

    h: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.ndim != 1 or h.size == 0:
            raise ParameterError("h must be a non-empty vector")
        _check_stochastic_rows(h[None, :], name="h")
        object.__setattr__(self, "h", _readonly(h))

    @property
    def K(self):
        return self.h.size

    def mean(self):
        return np.array(self.h)

    def second_moment(self):
        return np.diag(self.h)

    def sample(self, n, rng):
        labels = rng.choice(self.K, size=n, p=self.h)
        pi = np.zeros((n, self.K))
        pi[np.arange(n), labels] = 1.0
        return pi


@dataclass(frozen=True, eq=False)
class DirichletMembership:
    """Memberships drawn i.i.d. from Dirichlet(alpha)."""

    alpha: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        if a.ndim != 1 or a.size == 0:
            raise ParameterError("Dirichlet concentration must be a non-empty vector")
        if np.any(~np.isfinite(a)) or np.any(a <= 0):
            raise ParameterError("Dirichlet concentrations must be positive")
        object.__setattr__(self, "alpha", _readonly(a))

    @property
    def K(self):
        return self.alpha.size

    def mean(self):
        return self.alpha / self.alpha.sum()

    def second_moment(self):
        a0 = self.alpha.sum()
        return (np.diag(self.alpha) + np.outer(self.alpha, self.alpha)) / (a0 * (a0 + 1.0))

    def sample(self, n, rng):
        # normalized independent Gamma draws
        g = rng.standard_gamma(self.alpha, size=(n, self.K))
        s = g.sum(axis=1, keepdims=True)
        # all-zero rows can only happen through underflow with tiny alpha
        bad = s[:, 0] == 0
        if np.any(bad):
            g[bad] = 0.0
            g[bad, np.argmax(self.alpha)] = 1.0
            s[bad] = 1.0
        return g / s


def balanced_pure_memberships(n, K):
    """Pure memberships with community sizes differing by at most one."""
    labels = (np.arange(n) * K) // n
    pi = np.zeros((n, K))
    pi[np.arange(n), labels] = 1.0
    return FixedMembership(pi)


@dataclass(frozen=True, eq=False)
class MmsbmParams:
    """K, the K-by-K community matrix P, a membership model, and the node count n."""

    K: int
    P: np.ndarray
    membership: object
    n: int

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.P, dtype=float))
        K = int(self.K)
        if K < 1:
            raise ParameterError(f"K must be >= 1, got {K}")
        if P.shape != (K, K):
            raise ParameterError(f"P has shape {P.shape}, expected ({K}, {K})")
        if np.any(~np.isfinite(P)) or np.any(P < 0) or np.any(P > 1):
            raise ParameterError("P entries must lie in [0, 1]")
        if not np.allclose(P, P.T, rtol=0, atol=1e-14):
            raise ParameterError("P must be symmetric")
        if self.membership.K != K:
            raise ParameterError(f"membership has {self.membership.K} communities, P has {K}")
        if int(self.n) < 2:
            raise ParameterError("n must be >= 2")
        if isinstance(self.membership, FixedMembership) and self.membership.pi.shape[0] != self.n:
            raise ParameterError("fixed membership matrix must have n rows")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "P", _readonly((P + P.T) / 2))

    @property
    def h(self):
        """Mean membership vector."""
        return self.membership.mean()

    @property
    def G(self):
        return self.membership.second_moment()

    def with_n(self, n):
        return MmsbmParams(self.K, self.P, self.membership, n)


# ----------------------------------------------------------------------------
# Generation


def make_rng(seed, *key):
    """Counter-based generator for the stream identified by (seed, *key).

    Streams with different keys are statistically independent, and each
    one depends only on its own key, so replications can be farmed out to
    any number of workers without changing their draws.
    """
    ss = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


@functools.lru_cache(maxsize=8)
def _triu(n):
    iu = np.triu_indices(n, 1)
    for a in iu:
        a.setflags(write=False)
    return iu


def sample_memberships(params, rng):
    return params.membership.sample(params.n, rng)


def bernoulli_adjacency(omega, rng):
    """Draw A with independent upper-triangle entries A_ij ~ Bernoulli(omega_ij)."""
    n = omega.shape[0]
    iu = _triu(n)
    u = rng.random(iu[0].size)
    upper = u < omega[iu]
    a = np.zeros((n, n), dtype=np.uint8)
    a[iu] = upper
    a = a | a.T
    return AdjacencyMatrix(a)


def sample_network(params, rng, pi=None):
    """Draw (A, Pi); memberships are drawn first unless ``pi`` is given."""
    if pi is None:
        pi = sample_memberships(params, rng)
    omega = omega_matrix(params, pi)
    return bernoulli_adjacency(omega, rng), pi


def generate_network(params, seed):
    """Sample one network; identical (params, seed) give identical output."""
    A, _ = sample_network(params, make_rng(seed))
    return A


def omega_matrix(params, realized_pi):
    """The edge-probability matrix Pi P Pi' (dense, n-by-n)."""
    pi = np.asarray(realized_pi, dtype=float)
    if pi.ndim != 2 or pi.shape[1] != params.K:
        raise ParameterError(f"membership matrix must have {params.K} columns, got shape {pi.shape}")
    _check_stochastic_rows(pi)
    omega = pi @ params.P @ pi.T
    omega = (omega + omega.T) / 2
    # P <= 1 and stochastic rows bound every entry by 1 up to rounding
    return np.clip(omega, 0.0, 1.0)


def check_probability_matrix(omega, sym_tol=1e-9):
    omega = np.asarray(omega, dtype=float)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise ParameterError(f"probability matrix must be square, got shape {omega.shape}")
    if np.any(~np.isfinite(omega)) or np.any(omega < 0) or np.any(omega > 1):
        raise ParameterError("probability matrix entries must lie in [0, 1]")
    if np.max(np.abs(omega - omega.T), initial=0.0) > sym_tol:
        raise ParameterError("probability matrix must be symmetric")
    return omega


def centered_signal_matrix(omega):
    """Omega minus its mean entry times the all-ones matrix."""
    omega = check_probability_matrix(omega)
    n = omega.shape[0]
    return omega - omega.sum() / n**2


# ----------------------------------------------------------------------------
# Edge-list files


def parse_edgelist(text, path=None):
    """Parse the edge-list format: ``n`` then one ``i j`` (0-based, i < j) per line."""
    n = None
    seen = set()
    edges = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise EdgeListParseError("first line must hold the node count", lineno, path)
            try:
                n = int(parts[0])
            except ValueError:
                raise EdgeListParseError(f"bad node count {parts[0]!r}", lineno, path) from None
            if n < 2:
                raise EdgeListParseError(f"node count must be >= 2, got {n}", lineno, path)
            continue
        if len(parts) != 2:
            raise EdgeListParseError(f"expected 'i j', got {line!r}", lineno, path)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer node index in {line!r}", lineno, path) from None
        if not (0 <= i < j < n):
            raise EdgeListParseError(f"edge ({i}, {j}) must satisfy 0 <= i < j < {n}", lineno, path)
        if (i, j) in seen:
            raise EdgeListParseError(f"duplicate edge ({i}, {j})", lineno, path)
        seen.add((i, j))
        edges.append((i, j))
    if n is None:
        raise EdgeListParseError("missing node count line", None, path)
    return AdjacencyMatrix.from_edges(n, edges)


def read_edgelist(path):
    path = os.fspath(path)
    with open(path, encoding="utf-8") as fh:
        return parse_edgelist(fh.read(), path=path)


def format_edgelist(A):
    A = as_adjacency(A)
    lines = [str(A.n)]
    lines.extend(f"{i} {j}" for i, j in A.edges())
    return "\n".join(lines) + "\n"


def write_edgelist(A, path):
    with open(os.fspath(path), "w", encoding="utf-8") as fh:
        fh.write(format_edgelist(A))


# ----------------------------------------------------------------------------
# Parameter documents


def params_to_dict(params):
    m = params.membership
    if isinstance(m, FixedMembership):
        mdoc = {"type": "fixed", "pi": m.pi.tolist()}
    elif isinstance(m, PureMembership):
        mdoc = {"type": "pure", "h": m.h.tolist()}
    elif isinstance(m, DirichletMembership):
        mdoc = {"type": "dirichlet", "alpha": m.alpha.tolist()}
    else:
        raise ParameterError(f"unknown membership type {type(m).__name__}")
    return {"K": params.K, "n": params.n, "P": params.P.tolist(), "membership": mdoc}


def membership_from_dict(doc, n=None, K=None):
    kind = str(doc.get("type", "")).lower()
    if kind == "fixed":
        return FixedMembership(doc["pi"])
    if kind == "pure":
        return PureMembership(doc["h"])
    if kind == "dirichlet":
        return DirichletMembership(doc["alpha"])
    if kind == "balanced":
        if n is None or K is None:
            raise ParameterError("balanced membership needs n and K")
        return balanced_pure_memberships(n, K)
    raise ParameterError(f"unknown membership type {doc.get('type')!r}")


def params_from_dict(doc):
    try:
        n = int(doc["n"])
        P = np.atleast_2d(np.asarray(doc["P"], dtype=float))
        K = int(doc.get("K", P.shape[0]))
        membership = membership_from_dict(doc["membership"], n=n, K=K)
    except KeyError as exc:
        raise ParameterError(f"missing parameter field {exc.args[0]!r}") from None
    return MmsbmParams(K=K, P=P, membership=membership, n=n)
