"""Univariate and Tratnik bivariate Krawtchouk polynomials.

All evaluations are finite hypergeometric sums. Passing ``fractions.Fraction``
parameters keeps every intermediate value exact, which is how the floating
results are checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math
from math import factorial, sqrt
from typing import Optional, Union

import numpy as np

from .checks import CheckReport, GuardError
from .lattice import is_site, n_sites, site_index, sites, trinomial

Number = Union[float, Fraction]

MAX_RECURRENCE_N = 12


def pochhammer(a: int, n: int) -> int:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1) for integer a.

    For negative a the product is exactly zero once a factor crosses zero.
    """
    if n < 0:
        raise ValueError("pochhammer order must be non-negative")
    out = 1
    for k in range(n):
        out *= a + k
        if out == 0:
            return 0
    return out


@dataclass(frozen=True)
class PolyParams:
    N: int
    p: Number = Fraction(1, 2)
    q: Number = Fraction(1, 4)

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"N must be non-negative, got {self.N}")
        if not (0 < self.p < 1 and 0 < self.q < 1 and self.p + self.q < 1):
            raise ValueError(f"need 0 < p, q and p + q < 1, got p={self.p}, q={self.q}")

    @property
    def p_tilde(self) -> Number:
        return self.p * (1 - self.p - self.q) / (1 - self.p)

    @property
    def q_tilde(self) -> Number:
        return self.q / (1 - self.p)

    def as_float(self) -> "PolyParams":
        return PolyParams(self.N, float(self.p), float(self.q))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.p, Fraction) and isinstance(self.q, Fraction)


def _check_range(N: int, a: int, b: int, what: str) -> None:
    if not is_site(N, a, b):
        raise ValueError(f"{what} ({a}, {b}) out of range for N={N}")


def krawtchouk_uni(n: int, x: int, N: int, p: Number) -> Number:
    """K_n^N(x; p) = 2F1(-n, -x; -N; 1/p)."""
    if N < 0 or not (0 <= n <= N and 0 <= x <= N):
        raise ValueError(f"need 0 <= n, x <= N, got n={n}, x={x}, N={N}")
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    total = 0
    for l in range(min(n, x) + 1):
        coeff = Fraction(pochhammer(-n, l) * pochhammer(-x, l), factorial(l) * pochhammer(-N, l))
        total += coeff * (1 / p) ** l
    return total


def _k_scaled(n: int, x: int, M: int, p: Number) -> Number:
    # k_n^M(x; p) = (-M)_n K_n^M(x; p), written so that n > M is allowed:
    # (-M)_n / (-M)_l = (-M + l)_{n - l}
    total = 0
    for l in range(min(n, x) + 1):
        coeff = Fraction(pochhammer(-n, l) * pochhammer(-x, l) * pochhammer(-M + l, n - l), factorial(l))
        total += coeff * (1 / p) ** l
    return total


def tratnik(m: int, n: int, x: int, y: int, params: PolyParams) -> Number:
    """T_{m,n}^N(x, y) = k_m^{N-n}(x; p) k_n^{N-x}(y; q/(1-p)) / (-N)_{m+n}."""
    N = params.N
    _check_range(N, m, n, "degree")
    _check_range(N, x, y, "point")
    p, q = params.p, params.q
    num = _k_scaled(m, x, N - n, p) * _k_scaled(n, y, N - x, q / (1 - p))
    den = pochhammer(-N, m + n)
    if isinstance(num, Fraction) or isinstance(num, int):
        return Fraction(num) / den
    return num / den


def squared_norm(i: int, j: int, params: PolyParams) -> Number:
    """sum_{x,y} w(x,y) T_{i,j}(x,y)^2 in closed form."""
    N, p, q = params.N, params.p, params.q
    _check_range(N, i, j, "degree")
    return (1 - p - q) ** (i + j) / (trinomial(N, i, j) * params.p_tilde ** i * params.q_tilde ** j)


def weight(x: int, y: int, params: PolyParams) -> Number:
    """Trinomial weight binom(N; x, y) p^x q^y (1-p-q)^(N-x-y)."""
    N, p, q = params.N, params.p, params.q
    _check_range(N, x, y, "point")
    return trinomial(N, x, y) * p ** x * q ** y * (1 - p - q) ** (N - x - y)


def tratnik_orthonormal(i: int, j: int, x: int, y: int, params: PolyParams) -> float:
    return sqrt(1 / float(squared_norm(i, j, params))) * float(tratnik(i, j, x, y, params))


@lru_cache(maxsize=64)
def tratnik_table(params: PolyParams) -> np.ndarray:
    """T[(i,j), (x,y)] over all degree and point sites in lattice order."""
    N = params.N
    fp = params.as_float()
    S = sites(N)
    out = np.empty((len(S), len(S)))
    for a, (i, j) in enumerate(S):
        for b, (x, y) in enumerate(S):
            out[a, b] = tratnik(i, j, x, y, fp)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def _eigenvector_table(N: int) -> np.ndarray:
    params = PolyParams(N)
    S = sites(N)
    T = tratnik_table(params)
    norms = np.array([float(squared_norm(i, j, params)) for i, j in S])
    w = np.array([float(weight(x, y, params)) for x, y in S])
    U = T / np.sqrt(norms)[:, None] * np.sqrt(w)[None, :]
    U.setflags(write=False)
    return U


def spectrum(N: int, alpha: float, beta: float, x: int, y: int) -> float:
    _check_range(N, x, y, "spectral point")
    return alpha * (N - 2 * x) + beta * (2 * N - 2 * x - 4 * y)


@dataclass(frozen=True)
class SpectralData:
    """Eigenpairs of the lattice Hamiltonian at p=1/2, q=1/4.

    ``U[a, b]`` is the overlap of lattice site ``sites(N)[a]`` with the
    eigenvector labelled by spectral point ``sites(N)[b]``; ``eigenvalues[b]``
    is its energy.
    """

    N: int
    alpha: float
    beta: float
    eigenvalues: np.ndarray
    U: np.ndarray

    def column(self, x: int, y: int) -> np.ndarray:
        return self.U[:, site_index(self.N, x, y)]


def build_spectral(N: int, alpha: float, beta: float) -> SpectralData:
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    lam = np.array([spectrum(N, alpha, beta, x, y) for x, y in sites(N)])
    return SpectralData(N, float(alpha), float(beta), lam, _eigenvector_table(N))


def _shifted(table: np.ndarray, N: int, i: int, j: int) -> np.ndarray:
    if not is_site(N, i, j):
        return np.zeros(table.shape[1])
    return table[site_index(N, i, j)]


def check_recurrences(
    N: int,
    params: Optional[PolyParams] = None,
    alpha: float = 1.0,
    beta: float = 2.0,
    tol: float = 1e-10,
    max_n: Optional[int] = MAX_RECURRENCE_N,
) -> CheckReport:
    """Exhaustive residuals of the x- and y-recurrences and the contiguity relation.

    The x and y recurrences are checked at ``params`` (default p=1/2, q=1/4).
    The contiguity relation of the orthonormal polynomials only holds at
    p=1/2, q=1/4 and is always checked there, with weights ``alpha``, ``beta``.
    """
    if max_n is not None and N > max_n:
        raise GuardError(f"N={N} exceeds the recurrence guard N <= {max_n}")
    params = PolyParams(N) if params is None else params
    if params.N != N:
        raise ValueError("params.N does not match N")
    fp = params.as_float()
    p, q = fp.p, fp.q
    T = tratnik_table(fp)
    S = sites(N)
    xs = np.array([x for x, _ in S], dtype=float)
    ys = np.array([y for _, y in S], dtype=float)
    report = CheckReport(f"recurrences N={N} p={params.p} q={params.q}")

    res6 = res7 = 0.0
    for i, j in S:
        def g(di, dj):
            return _shifted(T, N, i + di, j + dj)

        t0 = g(0, 0)
        m = N - i - j
        rhs6 = -p * m * (g(1, 0) - t0) - (1 - p) * i * (g(-1, 0) - t0)
        res6 = max(res6, float(np.max(np.abs(xs * t0 - rhs6))))
        rhs7 = (p * q / (1 - p) * m * (g(1, 0) - t0)
                - q / (1 - p) * m * (g(0, 1) - t0)
                + q * i * (g(-1, 0) - t0)
                - (1 - p - q) * j * (g(0, -1) - t0)
                - p * (1 - p - q) / (1 - p) * j * (g(1, -1) - t0)
                - q / (1 - p) * i * (g(-1, 1) - t0))
        res7 = max(res7, float(np.max(np.abs(ys * t0 - rhs7))))
    report.require(res6 < tol, f"x-recurrence residual {res6:.3e} >= {tol}")
    report.require(res7 < tol, f"y-recurrence residual {res7:.3e} >= {tol}")

    # contiguity relation of t_{i,j} = U / sqrt(w), in matrix-free form
    U = _eigenvector_table(N)
    w = np.array([float(weight(x, y, PolyParams(N))) for x, y in S])
    t = U / np.sqrt(w)[None, :]
    lam = np.array([spectrum(N, alpha, beta, x, y) for x, y in S])
    # t grows like 1/sqrt(w); residuals are measured against each column's scale
    scale = np.maximum(1.0, np.max(np.abs(t), axis=0) * max(1.0, float(np.max(np.abs(lam)))))
    res8 = 0.0
    for i, j in S:
        def h(di, dj):
            return _shifted(t, N, i + di, j + dj)

        m = N - i - j
        rhs8 = (alpha * sqrt((i + 1) * m) * h(1, 0)
                + beta * sqrt(2 * (j + 1) * m) * h(0, 1)
                + alpha * j * h(0, 0)
                + alpha * sqrt(i * (m + 1)) * h(-1, 0)
                + beta * sqrt(2 * j * (m + 1)) * h(0, -1)
                + beta * sqrt(2 * i * (j + 1)) * h(-1, 1)
                + beta * sqrt(2 * (i + 1) * j) * h(1, -1))
        res8 = max(res8, float(np.max(np.abs(lam * h(0, 0) - rhs8) / scale)))
    report.require(res8 < tol, f"contiguity residual {res8:.3e} >= {tol}")
    report.details.update(x_residual=res6, y_residual=res7, contiguity_residual=res8)
    return report


def generating_function_sides(i: int, j: int, params: PolyParams, s, t, exact: bool = False):
    """Both sides of the generating function identity, plus the sum of |terms|.

    With ``exact=True`` (which needs Fraction ``p``, ``q``) both sides are
    evaluated in rational arithmetic, with ``s`` and ``t`` converted exactly.
    """
    N = params.N
    if exact:
        if not params.is_exact:
            raise ValueError("exact evaluation needs Fraction p and q")
        p, q = params.p, params.q
        s, t = Fraction(s), Fraction(t)
        terms = [trinomial(N, x, y) * s ** x * t ** y * tratnik(i, j, x, y, params) for x, y in sites(N)]
        lhs = sum(terms, Fraction(0))
        scale = sum((abs(v) for v in terms), Fraction(0))
    else:
        fp = params.as_float()
        p, q = fp.p, fp.q
        row = tratnik_table(fp)[site_index(N, i, j)]
        terms = np.array([trinomial(N, x, y) * s ** x * t ** y for x, y in sites(N)]) * row
        lhs = math.fsum(terms)
        scale = math.fsum(np.abs(terms))
    rhs = ((1 + s + t) ** (N - i - j)
           * (1 + (p - 1) / p * s + t) ** i
           * (1 + (p + q - 1) / q * t) ** j)
    return lhs, rhs, scale


def check_generating_function(
    N: int,
    params: Optional[PolyParams] = None,
    s: float = 0.3,
    t: float = -0.2,
    rel_tol: float = 1e-9,
    exact: bool = False,
) -> CheckReport:
    """Compare the weighted sum of T_{i,j} against the product form for every (i, j).

    In floating point the error is relative to |rhs|, floored at 1e-6 times the
    sum of absolute terms: near a root of the product the sum cancels and no
    floating evaluation can be relatively accurate. ``exact=True`` compares the
    two sides in rational arithmetic instead.
    """
    params = PolyParams(N) if params is None else params
    report = CheckReport(f"generating function N={N} s={s} t={t}{' exact' if exact else ''}")
    worst = 0.0
    for i, j in sites(N):
        lhs, rhs, scale = generating_function_sides(i, j, params, s, t, exact=exact)
        if exact:
            err = float(abs(lhs - rhs) / abs(rhs)) if rhs != 0 else float(abs(lhs))
        else:
            den = max(abs(rhs), 1e-6 * scale)
            err = abs(lhs - rhs) / den if den > 0 else abs(lhs - rhs)
        worst = max(worst, err)
        if err >= rel_tol:
            report.fail(f"(i,j)=({i},{j}): lhs={float(lhs)!r} rhs={float(rhs)!r} rel err {err:.3e}")
    report.details["max_rel_error"] = worst
    return report


def orthogonality_error(N: int) -> float:
    U = _eigenvector_table(N)
    D = n_sites(N)
    return float(max(np.max(np.abs(U.T @ U - np.eye(D))), np.max(np.abs(U @ U.T - np.eye(D)))))
