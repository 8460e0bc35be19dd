"""The chi-square, oSQ and PE statistics plus the signed cycle/path family.

Every efficient kernel works on the hollow centered adjacency matrix
``B = A - alpha_hat (11' - I)``.  Because ``B`` has a zero diagonal,
products along consecutive indices never involve a repeated adjacent
pair, so the only coincidences left to remove from matrix-power traces
are the non-adjacent ones.  Each closed form below is checked against
the exhaustive ``*_naive`` oracle in the test-suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .distributions import chi2_2_survival, normal_sf
from .errors import GuardError, InstanceTooSmallError, ParameterError
from .model import as_adjacency

__all__ = [
    "EdgeDensityEstimate",
    "TestReport",
    "NAIVE_MAX_N",
    "alpha_hat",
    "centered_adjacency",
    "chi2_statistic",
    "osq_statistic",
    "pe_statistic",
    "run_tests",
    "osq_raw",
    "osq_naive",
    "signed_cycle",
    "signed_path",
    "signed_cycle_naive",
    "signed_path_naive",
    "chi2_triple_sum",
    "chi2_null_mean",
    "CALIBRATIONS",
]

NAIVE_MAX_N = 14
CALIBRATIONS = ("corrected", "asymptotic")


@dataclass(frozen=True)
class EdgeDensityEstimate:
    raw: float
    clamped: float
    was_clamped: bool


@dataclass(frozen=True)
class TestReport:
    __test__ = False  # not a pytest class

    statistic_name: str
    raw: float
    normalized: float
    p_value: float
    level: float
    reject: bool
    n: int
    alpha_hat: EdgeDensityEstimate

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def _check_level(level):
    level = float(level)
    if not 0.0 < level < 1.0:
        raise ParameterError(f"level must lie in (0, 1), got {level}")
    return level


def alpha_hat(A):
    """Edge density 1'A1 / (n(n-1)), moved off {0, 1} for empty/complete graphs."""
    A = as_adjacency(A)
    n = A.n
    pairs = n * (n - 1)
    total = int(A.degrees.sum())
    raw = total / pairs
    if total == 0:
        return EdgeDensityEstimate(raw, 2 / pairs, True)
    if total == pairs:
        return EdgeDensityEstimate(raw, (pairs - 2) / pairs, True)
    return EdgeDensityEstimate(raw, raw, False)


def centered_adjacency(A, alpha=None):
    """Hollow matrix with off-diagonal entries A_ij - alpha (clamped alpha_hat by default)."""
    A = as_adjacency(A)
    if alpha is None:
        alpha = alpha_hat(A).clamped
    B = A.entries.astype(float) - alpha
    np.fill_diagonal(B, 0.0)
    return B


# ----------------------------------------------------------------------------
# Efficient kernels


def _degree_dispersion(A):
    """sum_i (d_i - dbar)^2, evaluated exactly in integers before the final division."""
    d = A.degrees.astype(object)
    n = A.n
    s1 = sum(d)
    s2 = sum(x * x for x in d)
    return float(n * s2 - s1 * s1) / n


def _chi2_raw(A, est):
    n = A.n
    a = est.clamped
    return _degree_dispersion(A) / ((n - 1) * a * (1 - a))


def _cycle4_from(B, B2):
    # tr(B^4) counts closed 4-walks with adjacent indices distinct; remove the
    # walks with i1 == i3 or i2 == i4 (each sum_i r_i^2) and add back the
    # walks with both coincidences (sum_ij B_ij^4).
    r = np.diag(B2)
    tr4 = float(np.einsum("ij,ij->", B2, B2))
    return tr4 - 2.0 * float(r @ r) + float(np.sum((B * B) ** 2))


def osq_raw(A, alpha=None):
    """Q_n: signed quadrilateral sum over ordered distinct 4-tuples."""
    A = as_adjacency(A)
    if A.n < 4:
        raise InstanceTooSmallError(f"oSQ needs n >= 4, got n={A.n}")
    if A.n == 4:
        return osq_naive(A, alpha)
    B = centered_adjacency(A, alpha)
    return _cycle4_from(B, B @ B)


def _cycle3(B):
    return float(np.einsum("ij,jk,ki->", B, B, B, optimize=True))


def _path2(B):
    s = B.sum(axis=1)
    return float(s @ s) - float(np.sum(B * B))


# ----------------------------------------------------------------------------
# Exhaustive oracles


def _distinct_tuples(n, k):
    """All ordered k-tuples of distinct indices in range(n), one per row."""
    tuples = np.arange(n, dtype=np.intp)[:, None]
    for _ in range(k - 1):
        t = tuples.shape[0]
        nxt = np.tile(np.arange(n, dtype=np.intp), t)
        base = np.repeat(tuples, n, axis=0)
        keep = np.all(base != nxt[:, None], axis=1)
        tuples = np.hstack([base[keep], nxt[keep, None]])
    return tuples


def _naive_guard(A, k, what):
    if A.n < k:
        raise InstanceTooSmallError(f"{what} needs at least {k} distinct nodes, got n={A.n}")
    if A.n > NAIVE_MAX_N:
        raise GuardError(f"exhaustive {what} refused for n={A.n} > {NAIVE_MAX_N}")


def signed_cycle_naive(A, m, alpha=None):
    """Literal sum over ordered distinct m-tuples of the closed signed product."""
    A = as_adjacency(A)
    if m < 3:
        raise ParameterError(f"cycle order must be >= 3, got {m}")
    _naive_guard(A, m, f"signed {m}-cycle sum")
    if alpha is None:
        alpha = alpha_hat(A).clamped
    B = A.entries.astype(float) - alpha
    t = _distinct_tuples(A.n, m)
    prod = np.ones(t.shape[0])
    for k in range(m):
        prod *= B[t[:, k], t[:, (k + 1) % m]]
    return math.fsum(prod)


def signed_path_naive(A, m, alpha=None):
    """Literal sum over ordered distinct (m+1)-tuples of the open signed product."""
    A = as_adjacency(A)
    if m < 2:
        raise ParameterError(f"path length must be >= 2, got {m}")
    _naive_guard(A, m + 1, f"signed {m}-path sum")
    if alpha is None:
        alpha = alpha_hat(A).clamped
    B = A.entries.astype(float) - alpha
    t = _distinct_tuples(A.n, m + 1)
    prod = np.ones(t.shape[0])
    for k in range(m):
        prod *= B[t[:, k], t[:, k + 1]]
    return math.fsum(prod)


def osq_naive(A, alpha=None):
    return signed_cycle_naive(A, 4, alpha)


def chi2_triple_sum(A, alpha=None):
    """The distinct-triple sum that (n-1) a (1-a) (X_n - n) equals."""
    return signed_path_naive(A, 2, alpha)


# ----------------------------------------------------------------------------
# Cycle / path family


def signed_cycle(A, m):
    """U_n^(m). Closed forms for m = 3, 4; exhaustive sum otherwise."""
    A = as_adjacency(A)
    m = int(m)
    if m < 3:
        raise ParameterError(f"cycle order must be >= 3, got {m}")
    if A.n < m:
        raise InstanceTooSmallError(f"signed {m}-cycle needs n >= {m}, got n={A.n}")
    if m == 3:
        return _cycle3(centered_adjacency(A))
    if m == 4:
        return osq_raw(A)
    return signed_cycle_naive(A, m)


def signed_path(A, m):
    """V_n^(m). Closed form for m = 2; exhaustive sum otherwise."""
    A = as_adjacency(A)
    m = int(m)
    if m < 2:
        raise ParameterError(f"path length must be >= 2, got {m}")
    if A.n < m + 1:
        raise InstanceTooSmallError(f"signed {m}-path needs n >= {m + 1}, got n={A.n}")
    if m == 2:
        return _path2(centered_adjacency(A))
    return signed_path_naive(A, m)


# ----------------------------------------------------------------------------
# Tests


def _check_calibration(calibration):
    if calibration not in CALIBRATIONS:
        raise ParameterError(f"unknown calibration {calibration!r}; use one of {CALIBRATIONS}")
    return calibration


def chi2_null_mean(n, calibration="corrected"):
    """Centering for X_n.

    Given the edge count, a null network is uniform over graphs with that
    many edges; each degree is then hypergeometric and
    E[X_n | edges] = n (N - n + 1) / (N - 1) with N = n(n-1)/2.  The
    asymptotic centering is n.
    """
    if calibration == "asymptotic":
        return float(n)
    N = n * (n - 1) // 2
    return n * (N - n + 1) / (N - 1)


def _osq_scale(n, a, calibration):
    # Each 4-cycle appears as 8 ordered tuples with the same product, so the
    # null variance of Q_n is 8 n(n-1)(n-2)(n-3) a^4 (1-a)^4.  The asymptotic
    # form keeps only the leading factor 2 sqrt(2) n^2 a^2.
    if calibration == "asymptotic":
        return 2.0 * math.sqrt(2.0) * n * n * a * a
    return 2.0 * math.sqrt(2.0 * n * (n - 1) * (n - 2) * (n - 3)) * a * a * (1.0 - a) ** 2


def _chi2_report(A, est, level, calibration):
    n = A.n
    raw = _chi2_raw(A, est)
    z = (raw - chi2_null_mean(n, calibration)) / math.sqrt(2.0 * n)
    p = normal_sf(z)
    return TestReport("chi2", raw, z, p, level, p < level, n, est)


def _osq_report(A, est, level, q, calibration):
    n = A.n
    z = q / _osq_scale(n, est.clamped, calibration)
    p = normal_sf(z)
    return TestReport("osq", q, z, p, level, p < level, n, est)


def _pe_report(chi2, osq):
    s = chi2.normalized**2 + osq.normalized**2
    p = chi2_2_survival(s)
    return TestReport("pe", s, s, p, chi2.level, p < chi2.level, chi2.n, chi2.alpha_hat)


def chi2_statistic(A, level=0.05, calibration="corrected"):
    """Degree-variance chi-square test with upper-tail normal p-value.

    The normalized value is (X_n - c_n) / sqrt(2n) where c_n is the exact
    conditional null mean (``calibration="corrected"``) or n
    (``"asymptotic"``).
    """
    A = as_adjacency(A)
    level = _check_level(level)
    _check_calibration(calibration)
    if A.n < 3:
        raise InstanceTooSmallError(f"chi2 statistic needs n >= 3, got n={A.n}")
    return _chi2_report(A, alpha_hat(A), level, calibration)


def osq_statistic(A, level=0.05, calibration="corrected"):
    """Orthodox signed-quadrilateral test.

    Q_n is divided by its null standard deviation
    2 sqrt(2 n(n-1)(n-2)(n-3)) a^2 (1 - a)^2; ``calibration="asymptotic"``
    uses 2 sqrt(2) n^2 a^2, which is only calibrated for large sparse networks.
    """
    A = as_adjacency(A)
    level = _check_level(level)
    _check_calibration(calibration)
    if A.n < 4:
        raise InstanceTooSmallError(f"oSQ statistic needs n >= 4, got n={A.n}")
    est = alpha_hat(A)
    return _osq_report(A, est, level, osq_raw(A, est.clamped), calibration)


def pe_statistic(A, level=0.05, calibration="corrected"):
    """Power-enhancement test S_n = psi1^2 + psi2^2 with chi2_2 p-value."""
    return run_tests(A, level, calibration)["pe"]


def run_tests(A, level=0.05, calibration="corrected"):
    """chi2, osq and pe reports from a single pass over A."""
    A = as_adjacency(A)
    level = _check_level(level)
    _check_calibration(calibration)
    if A.n < 5:
        raise InstanceTooSmallError(f"PE statistic needs n >= 5, got n={A.n}")
    est = alpha_hat(A)
    chi2 = _chi2_report(A, est, level, calibration)
    osq = _osq_report(A, est, level, osq_raw(A, est.clamped), calibration)
    return {"chi2": chi2, "osq": osq, "pe": _pe_report(chi2, osq)}
