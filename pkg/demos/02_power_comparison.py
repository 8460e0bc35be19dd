"""
Why combine the two statistics
==============================

The degree-based chi-square test sees only degree heterogeneity, while
the signed-quadrilateral test sees the spectral signal.  Two models where
one of them is blind, and the PE test that covers both.
"""

from petest import ExperimentConfig, preset_scenario, run_power_grid

# Symmetric planted partition: every node has the same expected degree,
# so delta_n = 0 and only oSQ has power.
# Rank-one model: strong degree heterogeneity, weak spectral signal.
for name in ("exp2_1", "exp2_2"):
    _, theory = preset_scenario(name)
    print(f"{name}: delta_n = {theory.delta_n:.3g}, tau_n = {theory.tau_n:.3g}")

config = ExperimentConfig(
    experiment="power",
    scenario="exp2_1",
    grid={"scenario": ["exp2_1", "exp2_2"]},
    replications=100,
    seed=11,
)
for cell in run_power_grid(config):
    powers = "  ".join(f"{k} {s.power:.2f}" for k, s in cell.stats.items())
    print(f"{cell.coords['scenario']:8s} {powers}")
