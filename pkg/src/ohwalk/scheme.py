"""Ordered Hamming scheme of depth 2 over Z/2Z.

A vertex of Q^(N,2) is a vector of N two-bit blocks ``(b1, b2)``. It is stored
as a 2N-bit integer with block ``k`` in bits ``2k`` (b1) and ``2k+1`` (b2), so
group addition is XOR. Textual blocks are written ``"b1b2"``, e.g. ``"10"``.

The shape of a vector is ``(e1, e2)``: ``e1`` counts blocks equal to ``10`` and
``e2`` counts blocks whose second bit is set (``01`` or ``11``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .checks import CheckReport, GuardError
from .lattice import Site, is_site, sites, trinomial

DEFAULT_MAX_N = 8

Shape = Tuple[int, int]


def check_guard(N: int, max_n: Optional[int] = DEFAULT_MAX_N) -> None:
    """Refuse exhaustive work on 4**N vertices when N exceeds ``max_n``.

    ``max_n=None`` disables the guard.
    """
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    if max_n is not None and N > max_n:
        raise GuardError(
            f"N={N} exceeds the enumeration guard N <= {max_n} "
            f"({4 ** N} vertices); raise max_n or pass guard override"
        )


def check_shape(N: int, shape) -> Shape:
    e1, e2 = (int(v) for v in shape)
    if not is_site(N, e1, e2):
        raise ValueError(f"invalid shape ({e1}, {e2}) for N={N}: need e1, e2 >= 0 and e1 + e2 <= N")
    return e1, e2


def encode(blocks: Sequence) -> int:
    """Pack blocks into the integer encoding.

    Each block is either a two-character string like ``"10"`` or a pair of bits.

    >>> encode(["00", "10", "11", "00", "01"])
    564
    """
    x = 0
    for k, block in enumerate(blocks):
        if isinstance(block, str):
            if len(block) != 2 or set(block) - {"0", "1"}:
                raise ValueError(f"block {block!r} is not two bits")
            b1, b2 = int(block[0]), int(block[1])
        else:
            b1, b2 = (int(b) for b in block)
            if b1 not in (0, 1) or b2 not in (0, 1):
                raise ValueError(f"block {block!r} is not two bits")
        x |= (b1 | (b2 << 1)) << (2 * k)
    return x


def decode(x: int, N: int) -> Tuple[str, ...]:
    _check_vertex(x, N)
    return tuple(f"{(x >> 2 * k) & 1}{(x >> (2 * k + 1)) & 1}" for k in range(N))


def _check_vertex(x: int, N: int) -> None:
    if x < 0 or x >= 4 ** N:
        raise ValueError(f"vertex {x} is not a {2 * N}-bit encoding")


def shape_of(x: int, N: int) -> Shape:
    _check_vertex(x, N)
    e1 = e2 = 0
    for k in range(N):
        block = (x >> (2 * k)) & 3
        if block == 1:
            e1 += 1
        elif block >= 2:
            e2 += 1
    return e1, e2


def shape_array(N: int) -> Tuple[np.ndarray, np.ndarray]:
    """Shapes of all 4**N vertices, as two integer arrays indexed by vertex."""
    v = np.arange(4 ** N, dtype=np.int64)
    e1 = np.zeros(v.shape, dtype=np.int64)
    e2 = np.zeros(v.shape, dtype=np.int64)
    for k in range(N):
        block = (v >> (2 * k)) & 3
        e1 += block == 1
        e2 += block >= 2
    return e1, e2


@lru_cache(maxsize=16)
def _site_lookup(N: int) -> np.ndarray:
    # vertex -> index of its shape in lattice.sites(N)
    e1, e2 = shape_array(N)
    s = e1 + e2
    return s * (s + 1) // 2 + e1


def column_size(N: int, i: int, j: int) -> int:
    """Number k_{i,j} of vertices of shape (i, j)."""
    if N < 0 or not is_site(N, i, j):
        raise ValueError(f"column ({i}, {j}) is invalid for N={N}")
    return trinomial(N, i, j) * 2 ** j


@lru_cache(maxsize=256)
def _differences(N: int, shape: Shape) -> Tuple[int, ...]:
    e1, e2 = shape
    out = []
    positions = range(N)
    for ones in combinations(positions, e1):
        rest = [k for k in positions if k not in ones]
        for twos in combinations(rest, e2):
            base = 0
            for k in ones:
                base |= 1 << (2 * k)
            for patterns in product((2, 3), repeat=e2):
                d = base
                for k, pat in zip(twos, patterns):
                    d |= pat << (2 * k)
                out.append(d)
    return tuple(sorted(out))


def differences(N: int, shape) -> np.ndarray:
    """All vectors of the given shape, ascending. These are the neighbors of 0."""
    return np.array(_differences(N, check_shape(N, shape)), dtype=np.int64)


def neighbors(x: int, shape, N: int) -> List[int]:
    """Vertices y with shape_of(x XOR y) == shape, in ascending order."""
    _check_vertex(x, N)
    return sorted(x ^ d for d in _differences(N, check_shape(N, shape)))


@dataclass(frozen=True)
class SchemeGraph:
    """The graph G_e of one relation of the scheme, with neighbors built on demand."""

    n_sites: int
    shape: Shape

    def __post_init__(self):
        object.__setattr__(self, "shape", check_shape(self.n_sites, self.shape))

    @property
    def degree(self) -> int:
        return column_size(self.n_sites, *self.shape)

    def neighbors(self, x: int) -> List[int]:
        return neighbors(x, self.shape, self.n_sites)


# Nonzero coefficients of A_(1,0) A_(i,j) and A_(0,1) A_(i,j) in the A basis.
def expected_product(N: int, first: Shape, shape: Shape) -> Dict[Site, int]:
    i, j = shape
    if first == (1, 0):
        terms = [
            ((i - 1, j), N + 1 - i - j),
            ((i, j), j),
            ((i + 1, j), i + 1),
        ]
    elif first == (0, 1):
        terms = [
            ((i, j - 1), 2 * (N + 1 - i - j)),
            ((i + 1, j - 1), 2 * (i + 1)),
            ((i - 1, j + 1), j + 1),
            ((i, j + 1), j + 1),
        ]
    else:
        raise ValueError(f"closed-form products only known for (1,0) and (0,1), got {first}")
    return {s: c for s, c in terms if is_site(N, *s) and c != 0}


IntersectionTable = Dict[Tuple[Shape, Shape, Shape], int]


def _pairs_for(N: int, c: Shape, rng: np.random.Generator, n_pairs: int) -> List[Tuple[int, int]]:
    diffs = _differences(N, c)
    total = 4 ** N * len(diffs)
    if total <= n_pairs:
        return [(x, x ^ d) for x in range(4 ** N) for d in diffs]
    xs = rng.integers(0, 4 ** N, size=n_pairs)
    ds = rng.integers(0, len(diffs), size=n_pairs)
    return [(int(x), int(x) ^ diffs[k]) for x, k in zip(xs, ds)]


def intersection_counts(N: int, first: Shape, x: int, y: int) -> np.ndarray:
    """For the pair (x, y), count z with e(x-z) = first, grouped by the shape of z-y.

    Entry ``k`` of the result belongs to ``lattice.sites(N)[k]``.
    """
    lookup = _site_lookup(N)
    z = x ^ differences(N, first)
    return np.bincount(lookup[z ^ y], minlength=len(sites(N)))


def verify_bose_mesner(
    N: int,
    max_n: Optional[int] = DEFAULT_MAX_N,
    n_pairs: int = 50,
    seed: int = 0,
) -> Tuple[IntersectionTable, CheckReport]:
    """Count the products A_(1,0) A_(i,j) and A_(0,1) A_(i,j) vertex by vertex.

    For every difference shape c, up to ``n_pairs`` random pairs (x, y) with
    e(x - y) = c are examined (all of them when there are fewer). The count of
    z with e(x - z) = first and e(z - y) = b is the coefficient of A_c in
    A_first A_b; it must agree across pairs and with the closed forms.
    """
    check_guard(N, max_n)
    rng = np.random.default_rng(seed)
    shapes = sites(N)
    table: IntersectionTable = {}
    report = CheckReport(f"bose-mesner N={N}")
    for first in ((1, 0), (0, 1)):
        for c in shapes:
            pairs = _pairs_for(N, c, rng, n_pairs)
            counts = [intersection_counts(N, first, x, y) for x, y in pairs]
            ref = counts[0]
            for (x, y), cnt in zip(pairs[1:], counts[1:]):
                if not np.array_equal(cnt, ref):
                    report.fail(f"{first}: counts for pair ({x}, {y}) differ from first pair of shape {c}")
                    break
            for b, value in zip(shapes, ref):
                table[(first, b, c)] = int(value)
        for b in shapes:
            expected = expected_product(N, first, b)
            for c in shapes:
                got = table[(first, b, c)]
                want = expected.get(c, 0)
                if got != want:
                    report.fail(f"A{first}A{b}: coefficient of A{c} is {got}, expected {want}")
    report.details["n_coefficients"] = len(table)
    return table, report


def check_regularity(N: int, max_n: Optional[int] = DEFAULT_MAX_N) -> CheckReport:
    """Exhaustive symmetry, regularity and partition check of all relations."""
    check_guard(N, max_n)
    report = CheckReport(f"scheme graphs N={N}")
    lookup = _site_lookup(N)
    verts = np.arange(4 ** N, dtype=np.int64)
    degrees = 0
    for k, s in enumerate(sites(N)):
        d = differences(N, s)
        degrees += len(d)
        report.require(len(d) == column_size(N, *s), f"shape {s}: degree {len(d)} != k_s")
        # y = x ^ d has x ^ y = d, so shape equality for every edge checks symmetry too
        ys = verts[:, None] ^ d[None, :]
        report.require(bool(np.all(lookup[ys ^ verts[:, None]] == k)), f"shape {s}: neighbor of wrong class")
    report.require(degrees == 4 ** N, f"degrees sum to {degrees}, not 4**N")
    report.require(list(differences(N, (0, 0))) == [0], "class (0,0) is not the identity relation")
    return report
