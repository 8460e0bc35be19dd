"""
Testing a network stored on disk
================================

Simulate a network, save it as an edge list, read it back and test it.
The ``petest test`` command does the same from a shell.
"""

import tempfile
from pathlib import Path

from petest import build_scenario, generate_network, read_edgelist, run_tests, write_edgelist

params = build_scenario("exp4_asymmetric", n=300, b=0.15)
A = generate_network(params, seed=42)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "network.txt"
    write_edgelist(A, path)
    print(path.read_text().splitlines()[:4], "...")
    B = read_edgelist(path)

assert A == B
for name, rep in run_tests(B).items():
    verdict = "reject" if rep.reject else "accept"
    print(f"{name:4s} normalized {rep.normalized:9.3f}  p {rep.p_value:.2e}  {verdict}")
