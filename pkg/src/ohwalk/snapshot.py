"""Byte-stable JSON and CSV encodings of an amplitude field.

Floats are written with 17 significant digits, which round-trips every
double exactly, and records follow the lattice site order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from .dynamics import AmplitudeField
from .lattice import Site, n_sites, sites

SCHEMA = "ohwalk-snapshot/1"
CSV_HEADER = "i,j,re,im,abs"


def fmt(x: float) -> str:
    s = format(float(x), ".17g")
    if not any(c in s for c in ".ein"):
        s += ".0"
    return s


@dataclass(frozen=True)
class SnapshotDocument:
    N: int
    alpha: float
    beta: float
    source: Site
    time: float
    field: AmplitudeField

    def records(self) -> List[Tuple[int, int, float, float, float]]:
        out = []
        for (i, j), amp in self.field.items():
            amp = complex(amp)
            out.append((i, j, amp.real, amp.imag, abs(amp)))
        return out

    def to_json(self) -> str:
        head = (
            "{\n"
            f'  "schema": {json.dumps(SCHEMA)},\n'
            f'  "N": {self.N},\n'
            f'  "alpha": {fmt(self.alpha)},\n'
            f'  "beta": {fmt(self.beta)},\n'
            f'  "source": [{self.source[0]}, {self.source[1]}],\n'
            f'  "time": {fmt(self.time)},\n'
            '  "records": [\n'
        )
        rows = [
            f'    {{"i": {i}, "j": {j}, "re": {fmt(re)}, "im": {fmt(im)}, "abs": {fmt(ab)}}}'
            for i, j, re, im, ab in self.records()
        ]
        return head + ",\n".join(rows) + "\n  ]\n}\n"

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        lines += [f"{i},{j},{fmt(re)},{fmt(im)},{fmt(ab)}" for i, j, re, im, ab in self.records()]
        return "\n".join(lines) + "\n"


def _field_from_records(N: int, t: float, records) -> AmplitudeField:
    if len(records) != n_sites(N):
        raise ValueError(f"expected {n_sites(N)} records for N={N}, got {len(records)}")
    amps = np.empty(n_sites(N), dtype=complex)
    for k, ((i, j), rec) in enumerate(zip(sites(N), records)):
        if (int(rec[0]), int(rec[1])) != (i, j):
            raise ValueError(f"record {k} is for site ({rec[0]}, {rec[1]}), expected ({i}, {j})")
        amps[k] = complex(float(rec[2]), float(rec[3]))
    return AmplitudeField(N, t, amps)


def read_json(text: Union[str, bytes]) -> SnapshotDocument:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    N = int(doc["N"])
    recs = [(r["i"], r["j"], r["re"], r["im"]) for r in doc["records"]]
    t = float(doc["time"])
    return SnapshotDocument(N, float(doc["alpha"]), float(doc["beta"]),
                            tuple(doc["source"]), t, _field_from_records(N, t, recs))


def read_csv_field(text: str, N: int, t: float = 0.0) -> AmplitudeField:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines[0] != CSV_HEADER:
        raise ValueError(f"bad CSV header {lines[0]!r}")
    recs = [ln.split(",") for ln in lines[1:]]
    return _field_from_records(N, t, recs)
