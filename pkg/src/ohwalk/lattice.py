"""Triangular lattice indexing shared by every module.

Sites are pairs ``(i, j)`` with ``i, j >= 0`` and ``i + j <= N``. They are
ordered by anti-diagonal ``i + j`` first and by ``i`` second, so for N=2 the
order is ``(0,0), (0,1), (1,0), (0,2), (1,1), (2,0)``.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Dict, Tuple

Site = Tuple[int, int]


def n_sites(N: int) -> int:
    return (N + 1) * (N + 2) // 2


@lru_cache(maxsize=None)
def sites(N: int) -> Tuple[Site, ...]:
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    return tuple((i, s - i) for s in range(N + 1) for i in range(s + 1))


@lru_cache(maxsize=None)
def _index_map(N: int) -> Dict[Site, int]:
    return {site: k for k, site in enumerate(sites(N))}


def is_site(N: int, i: int, j: int) -> bool:
    return i >= 0 and j >= 0 and i + j <= N


def check_site(N: int, site) -> Site:
    i, j = (int(v) for v in site)
    if not is_site(N, i, j):
        raise ValueError(f"site ({i}, {j}) is outside the triangle i, j >= 0, i + j <= {N}")
    return i, j


def site_index(N: int, i: int, j: int) -> int:
    try:
        return _index_map(N)[(i, j)]
    except KeyError:
        raise ValueError(f"site ({i}, {j}) is outside the triangle for N={N}") from None


def trinomial(N: int, i: int, j: int) -> int:
    """N! / (i! j! (N-i-j)!) as an exact integer."""
    if not is_site(N, i, j):
        raise ValueError(f"trinomial({N}; {i}, {j}) needs i, j >= 0 and i + j <= N")
    return factorial(N) // (factorial(i) * factorial(j) * factorial(N - i - j))
