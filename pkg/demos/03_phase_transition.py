"""
Phase transition of the PE test
===============================

Sweep the network size in the five-community planted partition and watch
power climb from the level to one as beta_n grows.
"""

from petest import ExperimentConfig, run_phase_curve
from petest.experiments import results_to_csv

config = ExperimentConfig(
    experiment="phase",
    scenario="exp3_1",
    grid={"n": [10, 110, 210, 310, 410, 510]},
    replications=100,
    statistics=["pe"],
    seed=3,
)
results = run_phase_curve(config)

for cell in results:
    bar = "#" * round(40 * cell.stats["pe"].power)
    print(f"n={cell.coords['n']:4d}  beta_n={cell.beta_n:8.1f}  {bar}")

# The same table as the CSV the harness writes for plotting
print(results_to_csv(results))
