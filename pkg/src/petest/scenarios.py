"""Named model configurations: the worked examples and the simulation designs.

Each scenario is a builder with keyword knobs; ``None`` for a knob means
"use the rule the design specifies" (e.g. ``a = 1 + n**-0.25``).
Scenarios whose community matrix is itself random (the asymmetric SBM of
the method comparison draws ``b`` uniformly) take the draw from the
``rng`` passed in; without an rng the interval midpoint is used.
"""

from __future__ import annotations

import inspect

import numpy as np

from .errors import ParameterError
from .model import (
    DirichletMembership,
    MmsbmParams,
    PureMembership,
    balanced_pure_memberships,
)
from .theory import theory_from_params

__all__ = ["SCENARIOS", "scenario_knobs", "build_scenario", "preset_scenario", "is_null_scenario"]


def _planted(K, a, b):
    return (a - b) * np.eye(K) + b * np.ones((K, K))


def _rank1(a, b, c=1.0):
    eta = np.array([a, b], dtype=float) / np.hypot(a, b)
    return c * np.outer(eta, eta)


def _two_block(a, b, d):
    return np.array([[a, b], [b, d]], dtype=float)


def _uniform_b(b, rng, lo=0.125, hi=0.175):
    if b is not None:
        return b
    if rng is None:
        return (lo + hi) / 2
    return float(rng.uniform(lo, hi))


def er(rng=None, *, n=200, alpha=0.1):
    return MmsbmParams(1, [[alpha]], PureMembership([1.0]), n)


def example1_S(rng=None, *, n=300, a=0.2, b=0.05):
    return MmsbmParams(2, _two_block(a, b, a), PureMembership([0.5, 0.5]), n)


def example1_AS1(rng=None, *, n=300, a=0.2, b=0.05, eps=0.2):
    return MmsbmParams(2, _two_block(a, b, a), PureMembership([eps, 1 - eps]), n)


def example1_AS2(rng=None, *, n=300, a=0.3, b=0.2, d=0.1):
    return MmsbmParams(2, _two_block(a, b, d), PureMembership([0.5, 0.5]), n)


def example1_AS3(rng=None, *, n=300, a=0.21, b=0.05, d=0.19):
    return MmsbmParams(2, _two_block(a, b, d), PureMembership([0.5, 0.5]), n)


def example2_rank1(rng=None, *, n=300, a=2.0, b=1.0, c=0.5):
    return MmsbmParams(2, _rank1(a, b, c), PureMembership([0.5, 0.5]), n)


def exp2_1(rng=None, *, n=300, K=5, a=0.2, b=0.05):
    K = int(K)
    return MmsbmParams(K, _planted(K, a, b), balanced_pure_memberships(n, K), n)


def exp2_2(rng=None, *, n=300, c=0.2, a=None, b=1.0):
    a = 1 + n**-0.25 if a is None else a
    return MmsbmParams(2, _rank1(a, b, c), balanced_pure_memberships(n, 2), n)


def exp3_1(rng=None, *, n=300, K=5, a=0.2, b=0.1):
    return exp2_1(rng, n=n, K=K, a=a, b=b)


def exp3_2(rng=None, *, n=300, c=0.06, a=None, b=1.0):
    return exp2_2(rng, n=n, c=c, a=a, b=b)


def exp4_er(rng=None, *, n=500, alpha=0.2):
    return er(rng, n=n, alpha=alpha)


def exp4_symmetric(rng=None, *, n=500, a=0.2, b=0.05):
    return MmsbmParams(2, _planted(2, a, b), balanced_pure_memberships(n, 2), n)


def exp4_asymmetric(rng=None, *, n=500, a=0.2, b=None):
    b = _uniform_b(b, rng)
    return MmsbmParams(2, _planted(2, a, b), PureMembership([0.2, 0.8]), n)


def exp4_rank1(rng=None, *, n=500, a=None, b=1.0):
    a = 1 + n**-0.5 if a is None else a
    return MmsbmParams(2, _rank1(a, b), balanced_pure_memberships(n, 2), n)


def exp4_symmetric_mm(rng=None, *, n=500, a=0.2, b=0.05):
    return MmsbmParams(2, _planted(2, a, b), DirichletMembership([0.1, 0.1]), n)


def exp4_asymmetric_mm(rng=None, *, n=500, a=0.2, b=None):
    b = _uniform_b(b, rng)
    return MmsbmParams(2, _planted(2, a, b), DirichletMembership([0.2, 0.8]), n)


def exp4_rank1_mm(rng=None, *, n=500, a=None, b=1.0):
    a = 1 + n**-0.2 if a is None else a
    return MmsbmParams(2, _rank1(a, b), DirichletMembership([0.4, 0.6]), n)


SCENARIOS = {
    f.__name__: f
    for f in (
        er, example1_S, example1_AS1, example1_AS2, example1_AS3, example2_rank1,
        exp2_1, exp2_2, exp3_1, exp3_2,
        exp4_er, exp4_symmetric, exp4_asymmetric, exp4_rank1,
        exp4_symmetric_mm, exp4_asymmetric_mm, exp4_rank1_mm,
    )
}

_NULL_SCENARIOS = {"er", "exp4_er"}


def _builder(name):
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ParameterError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None


def scenario_knobs(name):
    """Default knob values of a scenario (``None`` marks a derived default)."""
    sig = inspect.signature(_builder(name))
    return {k: p.default for k, p in sig.parameters.items() if p.kind is p.KEYWORD_ONLY}


def is_null_scenario(name):
    _builder(name)
    return name in _NULL_SCENARIOS


def build_scenario(name, rng=None, **knobs):
    builder = _builder(name)
    unknown = set(knobs) - set(scenario_knobs(name))
    if unknown:
        raise ParameterError(f"scenario {name!r} has no knob(s) {sorted(unknown)}")
    return builder(rng, **knobs)


def preset_scenario(name, **knobs):
    """Parameters and theory report of a named scenario."""
    params = build_scenario(name, **knobs)
    return params, theory_from_params(params, warn=False)
