"""
Intrinsic number of communities
===============================

A K=4 mixed-membership model can have a rank-one Omega that is also a
K=2 model.  The hull of the eigen-embedded rows settles how many
communities the matrix really has.
"""

import numpy as np

from petest import FixedMembership, MmsbmParams, intrinsic_num_communities, make_rng, omega_matrix

P = 0.01 * np.array([
    [1.0, 2.0, 1.8, 3.0],
    [2.0, 4.0, 3.6, 6.0],
    [1.8, 3.6, 3.24, 5.4],
    [3.0, 6.0, 5.4, 9.0],
])
print("eigenvalues of P:", np.round(np.linalg.eigvalsh(P), 6))

# four pure nodes plus some mixed ones
pi = np.vstack([np.eye(4), make_rng(0).dirichlet(np.ones(4), size=20)])
params = MmsbmParams(4, P, FixedMembership(pi), len(pi))
res = intrinsic_num_communities(omega_matrix(params, pi))
print(f"rank {res.rank}, intrinsic communities {res.vertex_count}")
print("hull vertices are nodes", res.vertex_indices)

# A full-rank three-community SBM, for contrast
P3 = 0.05 + 0.25 * np.eye(3)
labels = np.repeat(np.eye(3), 10, axis=0)
params3 = MmsbmParams(3, P3, FixedMembership(labels), 30)
print("K=3 SBM:", intrinsic_num_communities(omega_matrix(params3, labels)).vertex_count)
