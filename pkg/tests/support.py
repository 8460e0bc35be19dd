"""Helpers shared by the test modules: random graphs and the acceptance log."""

import math

import numpy as np

from petest.model import AdjacencyMatrix, make_rng
from petest.stats import _distinct_tuples, alpha_hat

ACCEPTANCE_SEED = 2024
ACCEPTANCE_LOG = []


def random_graph(rng, n, p):
    upper = np.triu(rng.random((n, n)) < p, 1).astype(np.uint8)
    return AdjacencyMatrix(upper | upper.T)


def oracle_corpus(count=500, sizes=range(5, 11), densities=(0.1, 0.5, 0.9), seed=ACCEPTANCE_SEED):
    """``count`` graphs cycling through sizes and densities.

    Empty and complete draws are redrawn: on them the edge density is
    clamped, and the chi-square identity no longer holds.
    """
    rng = make_rng(seed, 1)
    sizes = list(sizes)
    graphs = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        p = densities[(i // len(sizes)) % len(densities)]
        while True:
            A = random_graph(rng, n, p)
            if not alpha_hat(A).was_clamped:
                break
        graphs.append(A)
    return graphs


def absolute_term_sum(A, m, closed):
    """Sum of |products| over the distinct tuples of a signed cycle (closed) or path."""
    a = alpha_hat(A).clamped
    B = np.abs(A.entries.astype(float) - a)
    k = m if closed else m + 1
    t = _distinct_tuples(A.n, k)
    prod = np.ones(t.shape[0])
    for j in range(m):
        prod *= B[t[:, j], t[:, (j + 1) % k]]
    return math.fsum(prod)


def sum_error(value, oracle, scale):
    """Error of a signed sum relative to max(|oracle|, sum of |terms|)."""
    return abs(value - oracle) / max(abs(oracle), scale)


def record(number, title, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} | {detail}"
    ACCEPTANCE_LOG.append(line)
    print(line)
    return ok
