# # Reducing the walk to a triangle of sites
#
# Uniform superpositions over each shape span a subspace that both generators
# preserve. Restricted to it, the walk alpha*A10 + beta*A01 becomes a small
# symmetric matrix indexed by the sites (i, j) with i + j <= N.

import numpy as np

from ohwalk.dynamics import build_hamiltonian
from ohwalk.lattice import sites
from ohwalk.projection import build_columns, check_column_invariance, project_walk

N = 3
cb = build_columns(N)
print("columns:", cb.sizes)
print(check_column_invariance(cb).summary())

P = project_walk(cb, 1.0, 2.0)
H = build_hamiltonian(N, 1.0, 2.0)
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print("sites:", sites(N))
print(P.matrix)

# The projected matrix and the closed-form lattice Hamiltonian coincide.
print("max deviation:", np.max(np.abs(P.matrix - H.matrix)))
