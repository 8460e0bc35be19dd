"""Signal-to-noise quantities that govern the detection boundary."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateModelError, ParameterError
from .linalg import spectral_norm
from .model import centered_signal_matrix, check_probability_matrix

__all__ = [
    "TheoryReport",
    "ExactSnrReport",
    "TheoryWarning",
    "theory_report",
    "theory_from_params",
    "exact_snr",
]


class TheoryWarning(UserWarning):
    """A model sits outside the balance/sparsity regime the power theory covers."""


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


@dataclass(frozen=True, eq=False)
class TheoryReport:
    alpha0: float
    M: np.ndarray
    h: np.ndarray
    G: np.ndarray | None
    delta_n: float
    tau_n: float
    beta_n: float
    n: int
    diagnostics: dict = field(default_factory=dict)
    warnings: tuple = ()

    def to_dict(self):
        return _jsonable({
            "alpha0": self.alpha0,
            "M": self.M,
            "h": self.h,
            "G": self.G,
            "delta_n": self.delta_n,
            "tau_n": self.tau_n,
            "beta_n": self.beta_n,
            "n": self.n,
            "diagnostics": self.diagnostics,
            "warnings": list(self.warnings),
        })

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


@dataclass(frozen=True)
class ExactSnrReport:
    snr_chi2: float
    snr_osq: float

    def to_dict(self):
        return {"snr_chi2": self.snr_chi2, "snr_osq": self.snr_osq}


def _validate(K, P, h):
    P = np.atleast_2d(np.asarray(P, dtype=float))
    h = np.asarray(h, dtype=float).ravel()
    K = int(K)
    if P.shape != (K, K):
        raise ParameterError(f"P has shape {P.shape}, expected ({K}, {K})")
    if np.any(~np.isfinite(P)) or np.any(P < 0):
        raise ParameterError("P must be entrywise non-negative")
    if np.max(np.abs(P - P.T)) > 1e-12:
        raise ParameterError("P must be symmetric")
    if h.shape != (K,) or np.any(h < 0) or abs(h.sum() - 1.0) > 1e-12:
        raise ParameterError("h must be a probability vector of length K")
    return K, (P + P.T) / 2, h


def _diagnostics(h, G, alpha0, n, balance_bound, sparsity_bound):
    diag = {}
    notes = []
    hmin = float(h.min())
    ratio = math.inf if hmin == 0 else float(h.max()) / hmin
    diag["h_ratio"] = ratio
    if ratio > balance_bound:
        notes.append(f"community weights unbalanced: max(h)/min(h) = {ratio:.4g} > {balance_bound}")
    if G is not None:
        w = np.linalg.eigvalsh((G + G.T) / 2)
        ginv = math.inf if w.min() <= 1e-15 else 1.0 / float(w.min())
        diag["G_inv_norm"] = ginv
        if ginv > balance_bound:
            notes.append(f"||G^-1|| = {ginv:.4g} exceeds {balance_bound}")
    diag["alpha0"] = alpha0
    diag["n_alpha0"] = n * alpha0
    if alpha0 > sparsity_bound:
        notes.append(f"alpha0 = {alpha0:.4g} exceeds {sparsity_bound}")
    if n * alpha0 < 1.0 / sparsity_bound:
        notes.append(f"n*alpha0 = {n * alpha0:.4g} below {1.0 / sparsity_bound:.4g}")
    return diag, tuple(notes)


def theory_report(K, P, h, n, G=None, balance_bound=10.0, sparsity_bound=0.5, warn=True):
    """alpha0, M, delta_n, tau_n and beta_n for community matrix P and weights h.

    Matrix norms are spectral norms.  Balance and sparsity diagnostics are
    collected in ``diagnostics``/``warnings`` and never raise.
    """
    K, P, h = _validate(K, P, h)
    n = int(n)
    if n < 2:
        raise ParameterError("n must be >= 2")
    alpha0 = float(h @ P @ h)
    if alpha0 <= 0:
        raise DegenerateModelError("alpha0 = h'Ph is zero; the network is empty")
    M = P - alpha0
    gap = P @ h - alpha0
    delta = n**1.5 / alpha0 * float(gap @ gap)
    tau = n**2 / alpha0**2 * spectral_norm(M) ** 4
    if G is not None:
        G = np.asarray(G, dtype=float)
    diag, notes = _diagnostics(h, G, alpha0, n, balance_bound, sparsity_bound)
    if warn:
        for note in notes:
            warnings.warn(note, TheoryWarning, stacklevel=2)
    return TheoryReport(alpha0, M, h, G, delta, tau, max(delta, tau), n, diag, notes)


def theory_from_params(params, **kwargs):
    """``theory_report`` with h and G taken from the membership specification."""
    return theory_report(params.K, params.P, params.h, params.n, G=params.G, **kwargs)


def exact_snr(omega):
    """Finite-n SNR proxies of the chi-square and oSQ statistics for a given Omega."""
    omega = check_probability_matrix(omega)
    tilde = centered_signal_matrix(omega)
    var = omega * (1.0 - omega)
    ones = np.ones(omega.shape[0])
    u = tilde @ ones
    v = var @ ones
    den_chi2 = 2.0 * float(v @ v)
    var2 = var @ var
    den_osq = 8.0 * float(np.sum(var2 * var2))
    if den_chi2 <= 0 or den_osq <= 0:
        raise DegenerateModelError("every edge probability is 0 or 1; the noise level is zero")
    t2 = tilde @ tilde
    return ExactSnrReport(
        snr_chi2=float(u @ u) / math.sqrt(den_chi2),
        snr_osq=float(np.sum(t2 * t2)) / math.sqrt(den_osq),
    )
