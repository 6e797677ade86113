"""Single-excitation dynamics on the triangular lattice.

Three independent routes to e^{-itH}|source>:

* ``amplitude_closed_form``: the product formula, valid for source (0, 0);
* ``amplitude_spectral``: expansion in the Krawtchouk eigenbasis;
* ``amplitude_expm_oracle``: scaling-and-squaring of the truncated Taylor
  series of -iHt, which never touches the eigenbasis.

Time and couplings are dimensionless (hbar = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .krawtchouk import SpectralData
from .lattice import Site, check_site, n_sites, site_index, sites, trinomial


@dataclass(frozen=True)
class LatticeOperator:
    N: int
    alpha: float
    beta: float
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class AmplitudeField:
    N: int
    t: float
    amplitudes: np.ndarray  # complex, indexed like lattice.sites(N)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.probabilities)))

    def at(self, i: int, j: int) -> complex:
        return complex(self.amplitudes[site_index(self.N, i, j)])

    def items(self):
        return zip(sites(self.N), self.amplitudes)


def build_hamiltonian(N: int, alpha: float, beta: float) -> LatticeOperator:
    """Hamiltonian restricted to the single-excitation space.

    Only the forward hoppings are written; the backward ones are their
    transposes, and ``_check_backward`` asserts that they agree with the
    explicit (i-1, j), (i, j-1) and (i-1, j+1) coefficients.
    """
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    D = n_sites(N)
    H = np.zeros((D, D))
    for i, j in sites(N):
        c = site_index(N, i, j)
        H[c, c] = alpha * j
        m = N - i - j
        for (ti, tj), value in (
            ((i + 1, j), alpha * math.sqrt((i + 1) * m)),
            ((i, j + 1), beta * math.sqrt(2 * (j + 1) * m)),
            ((i + 1, j - 1), beta * math.sqrt(2 * (i + 1) * j)),
        ):
            if ti >= 0 and tj >= 0 and ti + tj <= N:
                r = site_index(N, ti, tj)
                H[r, c] = H[c, r] = value
    _check_backward(N, alpha, beta, H)
    H.setflags(write=False)
    return LatticeOperator(N, float(alpha), float(beta), H)


def _check_backward(N, alpha, beta, H):
    for i, j in sites(N):
        c = site_index(N, i, j)
        m = N - i - j
        for (ti, tj), value in (
            ((i - 1, j), alpha * math.sqrt(i * (m + 1))),
            ((i, j - 1), beta * math.sqrt(2 * j * (m + 1))),
            ((i - 1, j + 1), beta * math.sqrt(2 * i * (j + 1))),
        ):
            if ti >= 0 and tj >= 0 and ti + tj <= N:
                assert math.isclose(H[site_index(N, ti, tj), c], value, rel_tol=1e-14, abs_tol=1e-300)


def amplitude_closed_form(N: int, alpha: float, beta: float, i: int, j: int, t: float) -> complex:
    """f_{(i,j)}(t) = <e_{i,j}| e^{-itH} |e_{0,0}> by the product formula."""
    check_site(N, (i, j))
    z1 = complex(math.cos(2 * (alpha + beta) * t), math.sin(2 * (alpha + beta) * t))
    z2 = complex(math.cos(4 * beta * t), math.sin(4 * beta * t))
    phase = complex(math.cos(N * (alpha + 2 * beta) * t), -math.sin(N * (alpha + 2 * beta) * t))
    prefactor = math.sqrt(2 ** j * trinomial(N, i, j)) / 4 ** N
    return (phase * prefactor
            * _power(1 + 2 * z1 + z2, N - i - j)
            * _power(1 - 2 * z1 + z2, i)
            * _power(1 - z2, j))


def _power(base: complex, k: int) -> complex:
    # 0**0 is taken as 1
    return 1.0 + 0j if k == 0 else base ** k


def amplitude_spectral(sd: SpectralData, source: Site, target: Site, t: float) -> complex:
    N = sd.N
    a = site_index(N, *check_site(N, source))
    b = site_index(N, *check_site(N, target))
    return complex(np.sum(sd.U[b] * sd.U[a] * np.exp(-1j * sd.eigenvalues * t)))


def field_spectral(sd: SpectralData, source: Site, t: float) -> AmplitudeField:
    a = site_index(sd.N, *check_site(sd.N, source))
    amps = sd.U @ (np.exp(-1j * sd.eigenvalues * t) * sd.U[a])
    return AmplitudeField(sd.N, float(t), amps)


def evolve_field(sd: SpectralData, source: Site, times: Sequence[float]) -> List[AmplitudeField]:
    a = site_index(sd.N, *check_site(sd.N, source))
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, sd.eigenvalues)) * sd.U[a]
    amps = phases @ sd.U.T
    return [AmplitudeField(sd.N, float(t), row) for t, row in zip(times, amps)]


def expm_taylor(A: np.ndarray, tol: float = 1e-16) -> np.ndarray:
    """exp(A) by scaling and squaring a truncated Taylor series.

    A is scaled by 2**-s so that its 1-norm is at most 1/2, and the series is
    summed until the Lagrange bound of the remainder falls below ``tol``.
    """
    A = np.asarray(A, dtype=complex)
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    norm = float(np.max(np.sum(np.abs(A), axis=0))) if A.size else 0.0
    s = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    B = A / 2 ** s
    bnorm = norm / 2 ** s
    E = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    k = 0
    # remainder after order k is bounded by bnorm**(k+1) / (k+1)! * e**bnorm
    while bnorm ** (k + 1) / math.factorial(k + 1) * math.exp(bnorm) > tol:
        k += 1
        term = term @ B / k
        E = E + term
        if k > 60:
            break
    for _ in range(s):
        E = E @ E
    return E


def amplitude_expm_oracle(H: LatticeOperator, source: Site, t: float) -> AmplitudeField:
    a = site_index(H.N, *check_site(H.N, source))
    U = expm_taylor(-1j * t * H.matrix)
    return AmplitudeField(H.N, float(t), U[:, a].copy())
