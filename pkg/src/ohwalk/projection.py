"""Projection of the walk alpha*A_(1,0) + beta*A_(0,1) onto column subspaces.

Column ``(i, j)`` is the uniform superposition of all vertices of shape
``(i, j)``. Matrix elements are obtained by counting vertex-level edges between
two columns (an exact integer) and scaling by ``1/sqrt(k k')``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from .checks import CheckReport
from .lattice import Site, n_sites, site_index, sites
from .scheme import DEFAULT_MAX_N, _site_lookup, check_guard, column_size, differences


@dataclass(frozen=True)
class ColumnBasis:
    N: int
    members: Dict[Site, np.ndarray]

    @property
    def sizes(self) -> Dict[Site, int]:
        return {s: len(m) for s, m in self.members.items()}

    def norm(self, i: int, j: int) -> float:
        return 1.0 / np.sqrt(len(self.members[(i, j)]))


@dataclass(frozen=True)
class ProjectedOperator:
    N: int
    alpha: float
    beta: float
    counts_10: np.ndarray  # integer cross-edge counts under (1,0), site x site
    counts_01: np.ndarray

    @property
    def alpha_part(self) -> np.ndarray:
        return self._scaled(self.counts_10)

    @property
    def beta_part(self) -> np.ndarray:
        return self._scaled(self.counts_01)

    @property
    def matrix(self) -> np.ndarray:
        return self.alpha * self.alpha_part + self.beta * self.beta_part

    def _scaled(self, counts):
        k = np.array([column_size(self.N, *s) for s in sites(self.N)], dtype=float)
        return counts / np.sqrt(np.outer(k, k))


def build_columns(N: int, max_n: Optional[int] = DEFAULT_MAX_N) -> ColumnBasis:
    check_guard(N, max_n)
    lookup = _site_lookup(N)
    verts = np.arange(4 ** N, dtype=np.int64)
    members = {s: verts[lookup == k] for k, s in enumerate(sites(N))}
    return ColumnBasis(N, members)


def _cross_counts(cb: ColumnBasis, shape) -> np.ndarray:
    # counts[a, b] = number of (u, v) with u in column a, v in column b, u ~shape v
    N = cb.N
    lookup = _site_lookup(N)
    d = differences(N, shape)
    D = n_sites(N)
    counts = np.zeros((D, D), dtype=np.int64)
    for s, verts in cb.members.items():
        col = site_index(N, *s)
        targets = lookup[verts[:, None] ^ d[None, :]]
        counts[:, col] += np.bincount(targets.ravel(), minlength=D)
    return counts


def project_walk(cb: ColumnBasis, alpha: float, beta: float) -> ProjectedOperator:
    if alpha < 0 or beta < 0:
        raise ValueError(f"weights must be non-negative, got alpha={alpha}, beta={beta}")
    return ProjectedOperator(cb.N, float(alpha), float(beta),
                             _cross_counts(cb, (1, 0)), _cross_counts(cb, (0, 1)))


def _expected_rows(N: int, i: int, j: int):
    """Neighbor count of one vertex of column (i, j) in every other column."""
    rows = {
        (1, 0): {(i + 1, j): N - i - j, (i, j): j, (i - 1, j): i},
        (0, 1): {(i, j + 1): 2 * (N - i - j), (i + 1, j - 1): j,
                 (i, j - 1): j, (i - 1, j + 1): 2 * i},
    }
    return {k: {s: c for s, c in r.items() if c and min(s) >= 0 and sum(s) <= N}
            for k, r in rows.items()}


def check_column_invariance(cb: ColumnBasis) -> CheckReport:
    """Every vertex of a column sees the same neighbor count in every column.

    Besides the forward counts (N-i-j into (i+1,j) and j within the column
    under (1,0); 2(N-i-j) into (i,j+1) and j into (i+1,j-1) under (0,1)), the
    backward moves are checked as well, and all other columns must be empty.
    """
    N = cb.N
    lookup = _site_lookup(N)
    D = n_sites(N)
    report = CheckReport(f"column invariance N={N}")
    for s, verts in cb.members.items():
        expected = _expected_rows(N, *s)
        for shape in ((1, 0), (0, 1)):
            want = np.zeros(D, dtype=np.int64)
            for t, c in expected[shape].items():
                want[site_index(N, *t)] = c
            targets = lookup[verts[:, None] ^ differences(N, shape)[None, :]]
            per_vertex = np.zeros((len(verts), D), dtype=np.int64)
            np.add.at(per_vertex, (np.arange(len(verts))[:, None], targets), 1)
            bad = np.flatnonzero(np.any(per_vertex != want, axis=1))
            if bad.size:
                v = int(verts[bad[0]])
                report.fail(f"vertex {v} in column {s} under {shape}: "
                            f"counts {per_vertex[bad[0]].tolist()} != {want.tolist()}")
    return report
