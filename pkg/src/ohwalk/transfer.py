"""Perfect state transfer and fractional revival on the triangular lattice."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import evolve_field, field_spectral
from .krawtchouk import SpectralData
from .lattice import Site, check_site, site_index

PST = "PST"
FR = "FR"
RETURN = "return"
NONE = "none"

EVEN_ODD = "even/odd"
ODD_EVEN = "odd/even"
OTHER = "other"


@dataclass(frozen=True)
class TransferReport:
    kind: str
    source: Site
    targets: Tuple[Site, ...]
    time: float
    fidelity: float
    N: int
    alpha: float
    beta: float

    def to_dict(self):
        return {
            "kind": self.kind,
            "time": self.time,
            "fidelity": self.fidelity,
            "source": list(self.source),
            "targets": [list(s) for s in self.targets],
        }


@dataclass(frozen=True)
class RatioClass:
    """alpha/beta = a/b in lowest terms, with its parity tag.

    ``pst_time`` is the smallest T > 0 at which the parity argument puts PST
    from (0, 0) to (N, 0), for the scaling ``beta`` passed to
    :func:`classify_ratio` (``alpha = a * beta / b``), or None for odd/odd.
    """

    a: int
    b: int
    tag: str
    pst_time: Optional[float]

    @property
    def pst_predicted(self) -> bool:
        return self.tag != OTHER

    def period(self, beta: Optional[float] = None) -> float:
        # all energy gaps are multiples of 2*beta/b
        beta = float(self.b) if beta is None else beta
        return math.pi * self.b / beta


def classify_ratio(a: int, b: int, beta: Optional[float] = None) -> RatioClass:
    if isinstance(a, bool) or isinstance(b, bool) or int(a) != a or int(b) != b:
        raise ValueError("ratio must be a pair of integers")
    a, b = int(a), int(b)
    if b <= 0:
        raise ValueError(f"denominator must be positive, got {b}")
    if a < 0:
        raise ValueError(f"numerator must be non-negative, got {a}")
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if a % 2 == 0 and b % 2 == 1:
        tag = EVEN_ODD
    elif a % 2 == 1 and b % 2 == 0:
        tag = ODD_EVEN
    else:
        tag = OTHER
    beta = float(b) if beta is None else float(beta)
    if beta <= 0:
        raise ValueError("beta must be positive to predict a transfer time")
    # With alpha = a*c, beta = b*c and T = tau*pi/(2c), the conditions read
    # (a*tau, b*tau) = (odd, even) or (even, odd); coprimality forces tau
    # integral, and tau = 1 works exactly when the parities differ.
    time = math.pi * b / (2 * beta) if tag != OTHER else None
    return RatioClass(a, b, tag, time)


def _edge(N: int) -> Tuple[Site, ...]:
    return tuple((i, 0) for i in range(N + 1))


def detect_pst(sd: SpectralData, T: float, tol: float = 1e-9) -> TransferReport:
    """PST from (0, 0) to (N, 0) at time T, judged on |f_{(N,0)}(T)|^2."""
    N = sd.N
    fid = float(field_spectral(sd, (0, 0), T).probabilities[site_index(N, N, 0)])
    kind = PST if fid >= 1 - tol else NONE
    return TransferReport(kind, (0, 0), ((N, 0),), float(T), fid, N, sd.alpha, sd.beta)


def detect_fr(
    sd: SpectralData,
    source: Site,
    T: float,
    edge: Optional[Sequence[Site]] = None,
    tol: float = 1e-9,
) -> TransferReport:
    """Fractional revival of ``source`` onto ``edge`` (default: the j = 0 row).

    FR needs the summed probability on the edge to reach 1 - tol with at least
    two edge sites holding probability >= tol. A single occupied site is
    reported as PST (or ``return`` when it is the source itself).
    """
    N = sd.N
    source = check_site(N, source)
    edge = _edge(N) if edge is None else tuple(check_site(N, s) for s in edge)
    probs = field_spectral(sd, source, T).probabilities
    edge_probs = np.array([probs[site_index(N, *s)] for s in edge])
    total = float(edge_probs.sum())
    occupied = [s for s, pr in zip(edge, edge_probs) if pr >= tol]
    if total < 1 - tol:
        kind, targets = NONE, edge
    elif len(occupied) >= 2:
        kind, targets = FR, edge
    else:
        targets = tuple(occupied) or edge
        kind = RETURN if targets == (source,) else PST
    return TransferReport(kind, source, targets, float(T), total, N, sd.alpha, sd.beta)


@dataclass
class ScanTrace:
    N: int
    source: Site
    times: np.ndarray
    probabilities: np.ndarray  # (steps, sites)
    edge_sum: np.ndarray
    corner: np.ndarray  # probability at (N, 0)
    corner_maxima: np.ndarray = field(default_factory=lambda: np.array([], dtype=int))
    edge_maxima: np.ndarray = field(default_factory=lambda: np.array([], dtype=int))

    def points(self):
        for k, t in enumerate(self.times):
            yield float(t), self.probabilities[k], float(self.edge_sum[k]), float(self.corner[k])


def _local_maxima(v: np.ndarray, floor: float) -> np.ndarray:
    if len(v) < 3:
        return np.array([], dtype=int)
    mid = v[1:-1]
    hit = (mid >= v[:-2]) & (mid > v[2:]) & (mid >= floor)
    return np.flatnonzero(hit) + 1


def scan_times(sd: SpectralData, source: Site, t_max: float, steps: int, floor: float = 0.5) -> ScanTrace:
    """Evaluate the field on a uniform grid over [0, t_max].

    Interior local maxima of the corner probability and of the edge sum that
    exceed ``floor`` are flagged.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    N = sd.N
    source = check_site(N, source)
    times = np.array([0.0]) if t_max == 0 else np.linspace(0.0, t_max, steps)
    fields = evolve_field(sd, source, times)
    probs = np.array([f.probabilities for f in fields])
    edge_idx = [site_index(N, *s) for s in _edge(N)]
    edge_sum = probs[:, edge_idx].sum(axis=1)
    corner = probs[:, site_index(N, N, 0)]
    return ScanTrace(N, source, times, probs, edge_sum, corner,
                     _local_maxima(corner, floor), _local_maxima(edge_sum, floor))


def _refine(fn, lo: float, hi: float) -> float:
    res = minimize_scalar(lambda t: -fn(t), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x)


def find_events(sd: SpectralData, source: Site, trace: ScanTrace, tol: float = 1e-9) -> List[TransferReport]:
    """Refine every flagged maximum and keep those that certify as PST or FR."""
    N = sd.N
    source = check_site(N, source)
    t = trace.times
    events: List[TransferReport] = []
    corner_idx = site_index(N, N, 0)
    edge_idx = [site_index(N, *s) for s in _edge(N)]

    for k in trace.corner_maxima:
        T = _refine(lambda s: field_spectral(sd, source, s).probabilities[corner_idx], t[k - 1], t[k + 1])
        probs = field_spectral(sd, source, T).probabilities
        fid = float(probs[corner_idx])
        if fid >= 1 - tol:
            events.append(TransferReport(PST, source, ((N, 0),), T, fid, N, sd.alpha, sd.beta))
    for k in trace.edge_maxima:
        T = _refine(lambda s: field_spectral(sd, source, s).probabilities[edge_idx].sum(), t[k - 1], t[k + 1])
        report = detect_fr(sd, source, T, tol=tol)
        if report.kind == FR:
            events.append(report)
    events.sort(key=lambda r: r.time)
    return events
