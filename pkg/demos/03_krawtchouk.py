# # Bivariate Krawtchouk polynomials diagonalise the lattice Hamiltonian
#
# Evaluated in exact rationals at p = 1/2, q = 1/4, the polynomials are
# orthogonal under the trinomial weight; normalised and weighted they form the
# eigenvectors of H.

from fractions import Fraction

import numpy as np

from ohwalk.dynamics import build_hamiltonian
from ohwalk.krawtchouk import (
    PolyParams,
    build_spectral,
    check_generating_function,
    check_recurrences,
    squared_norm,
    tratnik,
)

P = PolyParams(4)
print("T_{1,1}(2,1) =", tratnik(1, 1, 2, 1, P), " squared norm:", squared_norm(1, 1, P))

for N in (4, 8):
    print(check_recurrences(N).summary())
    print(check_generating_function(N, s=0.4, t=-0.3).summary())

# An exact check at a rational point: both sides agree to the last digit.
r = check_generating_function(5, PolyParams(5, Fraction(1, 2), Fraction(1, 4)), 0.25, 0.5, exact=True)
print(r.summary(), r.details)

N, alpha, beta = 6, 1.0, 2.0
sd = build_spectral(N, alpha, beta)
H = build_hamiltonian(N, alpha, beta).matrix
print("orthogonality:", np.max(np.abs(sd.U.T @ sd.U - np.eye(len(sd.U)))))
print("eigen residual:", np.max(np.abs(H @ sd.U - sd.U * sd.eigenvalues)))
