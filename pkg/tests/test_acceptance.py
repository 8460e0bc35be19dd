"""Acceptance criteria, each run at its stated tolerance.

Every test prints one ``criterion N PASS/FAIL`` line (also repeated in the
pytest terminal summary).  Monte Carlo criteria use the fixed seed
``ACCEPTANCE_SEED``.  Run standalone with ``python3 tests/test_acceptance.py``.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest
from scipy import stats as sps
from scipy.optimize import isotonic_regression

from petest.experiments import (
    ExperimentConfig,
    load_config,
    run_null_calibration,
    run_phase_curve,
    run_power_grid,
    write_results,
)
from petest.inc import intrinsic_num_communities
from petest.model import (
    FixedMembership,
    MmsbmParams,
    PureMembership,
    balanced_pure_memberships,
    make_rng,
    omega_matrix,
    sample_network,
)
from petest.scenarios import build_scenario
from petest.stats import (
    alpha_hat,
    chi2_statistic,
    chi2_triple_sum,
    osq_naive,
    osq_raw,
    run_tests,
    signed_cycle,
    signed_cycle_naive,
    signed_path,
    signed_path_naive,
)
from petest.theory import theory_report
from support import (
    ACCEPTANCE_SEED,
    absolute_term_sum,
    oracle_corpus,
    record,
    sum_error,
)

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
TOL = 1e-9


@pytest.fixture(scope="module")
def corpus():
    return oracle_corpus()


def test_c01_oracle_equivalence(corpus):
    start = time.perf_counter()
    worst = {"Q_n": 0.0, "U3": 0.0, "V2": 0.0}
    for A in corpus:
        pairs = {
            "Q_n": (osq_raw(A), osq_naive(A), absolute_term_sum(A, 4, True)),
            "U3": (signed_cycle(A, 3), signed_cycle_naive(A, 3), absolute_term_sum(A, 3, True)),
            "V2": (signed_path(A, 2), signed_path_naive(A, 2), absolute_term_sum(A, 2, False)),
        }
        for name, (fast, slow, scale) in pairs.items():
            worst[name] = max(worst[name], sum_error(fast, slow, scale))
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= TOL and elapsed < 10.0
    detail = ", ".join(f"{k} max err {v:.2e}" for k, v in worst.items())
    record(1, "oracle equivalence, 500 graphs n=5..10", ok, f"{detail}; {elapsed:.1f}s")
    assert ok


def test_c02_chi2_identity(corpus):
    worst = 0.0
    for A in corpus:
        a = alpha_hat(A).clamped
        n = A.n
        lhs = (n - 1) * a * (1 - a) * (chi2_statistic(A, calibration="asymptotic").raw - n)
        rhs = chi2_triple_sum(A)
        worst = max(worst, sum_error(lhs, rhs, absolute_term_sum(A, 2, False)))
    ok = worst <= TOL
    record(2, "chi-square identity vs distinct-triple sum", ok, f"max err {worst:.2e} over {len(corpus)} graphs")
    assert ok


def _null_draws(reps, n=200, alpha=0.1):
    params = build_scenario("er", n=n, alpha=alpha)
    psi1, psi2 = [], []
    for r in range(reps):
        A, _ = sample_network(params, make_rng(ACCEPTANCE_SEED, 3, r))
        rep = run_tests(A)
        psi1.append(rep["chi2"].normalized)
        psi2.append(rep["osq"].normalized)
    return np.array(psi1), np.array(psi2)


@pytest.mark.slow
def test_c03_null_calibration():
    start = time.perf_counter()
    psi1, psi2 = _null_draws(2000)
    ks1 = sps.kstest(psi1[:500], "norm").statistic
    ks2 = sps.kstest(psi2[:500], "norm").statistic
    corr = float(np.corrcoef(psi1, psi2)[0, 1])
    elapsed = time.perf_counter() - start
    ok = ks1 < 0.0728 and ks2 < 0.0728 and abs(corr) < 0.1 and elapsed < 120
    record(3, "null calibration n=200 alpha=0.1", ok,
           f"KS psi1 {ks1:.4f}, KS psi2 {ks2:.4f} (crit 0.0728), corr {corr:+.4f} at 2000 reps; {elapsed:.0f}s")
    assert ok


@pytest.mark.slow
def test_c04_type_one_error_table():
    start = time.perf_counter()
    config = load_config(CONFIGS / "exp1_2_type1_table.json", seed=ACCEPTANCE_SEED)
    results = run_null_calibration(config)
    rates = [(res.coords["n"], res.coords["alpha"], res.stats["pe"].power) for res in results]
    outliers = [(n, a, p) for n, a, p in rates if abs(p - 0.05) > 0.025]
    elapsed = time.perf_counter() - start
    ok = len(rates) == 16 and len(outliers) <= 2 and elapsed < 900
    table = " ".join(f"{p:.3f}" for _, _, p in rates)
    record(4, "PE type I error, 16 cells x 500 reps", ok,
           f"{len(outliers)} cells outside 0.05+-0.025 {outliers}; rates {table}; {elapsed:.0f}s")
    assert ok


TABLE3 = {
    "exp4_er": ((0.05, 0.05, 0.05), 0.03),
    "exp4_symmetric": ((0.0, 1.0, 1.0), 0.05),
    "exp4_asymmetric": ((0.96, 0.33, 0.92), 0.08),
    "exp4_rank1": ((0.95, 0.04, 0.88), 0.08),
    "exp4_symmetric_mm": ((0.09, 1.0, 1.0), 0.10),
    "exp4_asymmetric_mm": ((0.87, 0.06, 0.76), 0.10),
    "exp4_rank1_mm": ((0.99, 0.03, 0.98), 0.10),
}


@pytest.mark.slow
def test_c05_method_comparison_table():
    start = time.perf_counter()
    config = ExperimentConfig(experiment="power", scenario="exp4_er", grid={"scenario": list(TABLE3)},
                              replications=500, seed=ACCEPTANCE_SEED)
    results = run_power_grid(config)
    misses, rows = [], []
    for res in results:
        target, band = TABLE3[res.coords["scenario"]]
        got = tuple(res.stats[s].power for s in ("chi2", "osq", "pe"))
        rows.append(f"{res.coords['scenario']}=" + "/".join(f"{g:.3f}" for g in got))
        for stat, g, t in zip(("chi2", "osq", "pe"), got, target):
            if abs(g - t) > band:
                misses.append(f"{res.coords['scenario']}:{stat} {g:.3f} vs {t}+-{band}")
    elapsed = time.perf_counter() - start
    ok = not misses and elapsed < 1800
    record(5, "chi2/oSQ/PE power table, n=500, 500 reps", ok,
           f"misses {misses or 'none'}; {' '.join(rows)}; {elapsed:.0f}s")
    assert ok


@pytest.mark.slow
def test_c06_phase_transition():
    config = load_config(CONFIGS / "exp3_1a_phase_n.json", seed=ACCEPTANCE_SEED)
    results = run_phase_curve(config)
    beta = np.array([res.beta_n for res in results])
    power = np.array([res.stats["pe"].power for res in results])
    order = np.argsort(beta, kind="stable")
    fit = isotonic_regression(power[order]).x
    sup = float(np.max(np.abs(fit - power[order])))
    ns = [res.coords["n"] for res in results]
    p10 = power[ns.index(10)]
    p760 = power[ns.index(760)]
    ok = p10 <= config.level + 0.05 and p760 >= 0.95 and sup <= 0.1
    record(6, "PE phase transition over n=10..760", ok,
           f"power(n=10) {p10:.3f}, power(n=760) {p760:.3f}, isotonic sup-norm {sup:.3f}")
    assert ok


def test_c07_theory_formulas():
    checks = []
    grid = [(a, b) for a in (0.1, 0.2, 0.5, 0.9) for b in (0.01, 0.05, 0.3, 0.8)]
    worst_delta = 0.0
    beta_exact = True
    for a, b in grid:
        for n in (50, 300, 2000):
            rep = theory_report(2, [[a, b], [b, a]], [0.5, 0.5], n, warn=False)
            worst_delta = max(worst_delta, abs(rep.delta_n))
            beta_exact &= rep.beta_n == max(rep.delta_n, rep.tau_n)
    checks.append(worst_delta <= 1e-12)
    for name in ("exp2_2", "exp4_asymmetric", "exp4_rank1_mm", "example1_AS2"):
        p = build_scenario(name)
        rep = theory_report(p.K, p.P, p.h, p.n, warn=False)
        beta_exact &= rep.beta_n == max(rep.delta_n, rep.tau_n)
    checks.append(beta_exact)
    a, b, c = 2.0, 1.0, 0.5
    p = build_scenario("example2_rank1", a=a, b=b, c=c)
    alpha0 = theory_report(p.K, p.P, p.h, p.n).alpha0
    closed = c * (a + b) ** 2 / (4 * (a * a + b * b))
    checks.append(abs(alpha0 - closed) <= 1e-12 and abs(closed - 0.225) <= 1e-12)
    ok = all(checks)
    record(7, "theory formulas", ok,
           f"beta==max(delta,tau): {beta_exact}; case S max|delta| {worst_delta:.1e}; alpha0 {alpha0!r} vs 0.225")
    assert ok


def _example3_omega():
    P = 0.01 * np.array([[1, 2, 1.8, 3], [2, 4, 3.6, 6], [1.8, 3.6, 3.24, 5.4], [3, 6, 5.4, 9]])
    rng = make_rng(ACCEPTANCE_SEED, 8)
    pi = np.vstack([np.eye(4), rng.dirichlet(np.ones(4), size=26)])
    params = MmsbmParams(4, P, FixedMembership(pi), pi.shape[0])
    return omega_matrix(params, pi)


def test_c08_intrinsic_number_of_communities():
    found = {}
    found["ER"] = intrinsic_num_communities(np.full((50, 50), 0.1)).vertex_count
    found["Example 3"] = intrinsic_num_communities(_example3_omega()).vertex_count
    expected = {"ER": 1, "Example 3": 2}
    for K in (2, 3, 4):
        P = 0.05 * np.ones((K, K)) + 0.25 * np.eye(K)
        params = MmsbmParams(K, P, balanced_pure_memberships(30, K), 30)
        found[f"SBM K={K}"] = intrinsic_num_communities(omega_matrix(params, params.membership.pi)).vertex_count
        expected[f"SBM K={K}"] = K
    ok = found == expected
    record(8, "intrinsic number of communities", ok, f"found {found}, expected {expected}")
    assert ok


@pytest.mark.slow
def test_c09_large_network_runtime():
    params = MmsbmParams(1, [[0.1]], PureMembership([1.0]), 2000)
    A, _ = sample_network(params, make_rng(ACCEPTANCE_SEED, 9))
    start = time.perf_counter()
    reports = run_tests(A)
    elapsed = time.perf_counter() - start
    ok = elapsed < 30 and all(math.isfinite(r.normalized) for r in reports.values())
    record(9, "chi2 + oSQ + PE on n=2000", ok, f"{elapsed:.2f}s")
    assert ok


@pytest.mark.slow
def test_c10_thread_count_invariance(tmp_path):
    doc = dict(experiment="power", scenario="exp4_asymmetric_mm",
               grid={"n": [60, 120], "a": [0.2, 0.3]}, replications=40, seed=ACCEPTANCE_SEED, chunk_size=7)
    texts = []
    for threads in (1, 8):
        out = tmp_path / f"threads{threads}.csv"
        config = ExperimentConfig(**doc, threads=threads, output=str(out))
        write_results(run_power_grid(config), config.output, config.format)
        texts.append(out.read_bytes())
    ok = texts[0] == texts[1] and len(texts[0]) > 0
    record(10, "byte-identical CSV at 1 and 8 workers", ok, f"{len(texts[0])} bytes, identical={texts[0] == texts[1]}")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
