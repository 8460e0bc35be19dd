"""
Null calibration of the chi-square, oSQ and PE statistics
=========================================================

Draw Erdos-Renyi networks, compute the three statistics and compare
their empirical behaviour with the reference laws N(0,1) and chi2_2.
"""

import numpy as np

from petest import build_scenario, make_rng, run_tests, sample_network

params = build_scenario("er", n=200, alpha=0.1)

draws = []
for r in range(300):
    A, _ = sample_network(params, make_rng(7, r))
    reports = run_tests(A)
    draws.append([reports[k].normalized for k in ("chi2", "osq", "pe")])
draws = np.array(draws)

# psi1 and psi2 should look standard normal, S_n like chi2 with 2 dof
for name, col in zip(("psi1", "psi2"), draws[:, :2].T):
    print(f"{name}: mean {col.mean():+.3f}  sd {col.std(ddof=1):.3f}")
print(f"S_n : mean {draws[:, 2].mean():.3f} (chi2_2 mean is 2)")
print(f"corr(psi1, psi2) = {np.corrcoef(draws[:, 0], draws[:, 1])[0, 1]:+.3f}")

# Rejection rate of the level-5% PE test
print("PE type I error:", np.mean(np.exp(-draws[:, 2] / 2) < 0.05))

###############################################################################
# The literal large-n normalizations are available too.  On dense networks
# the oSQ part is visibly under-dispersed.

A, _ = sample_network(build_scenario("er", n=200, alpha=0.4), make_rng(8))
for calibration in ("corrected", "asymptotic"):
    print(calibration, round(run_tests(A, calibration=calibration)["osq"].normalized, 4))
