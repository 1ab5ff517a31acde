"""Decomposition of a unit into overlapping candidate phrases.

Elements are candidate intervals of the unit. An arc connects u to v when
start_u < start_v <= end_u < end_v; the shared region [start_v, end_u) is
the overlap, itself always a candidate (possibly empty). A decomposition is
a path from an interval starting at 0 to one ending at the unit end with at
least one arc, scored by the sum of overlap log-probabilities. A unit whose
interval graph admits no such path is atomic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import accel
from .symindex import CandidateTable, FrozenIndex

EPS = 1e-9


@dataclass
class UnitTable:
    """Candidate intervals of one unit, sorted by (start, end)."""
    L: int
    ii: np.ndarray
    jj: np.ndarray
    cid: np.ndarray
    keys: np.ndarray
    order2: np.ndarray   # sorted by (end, start), for the backward sweep

    def __len__(self):
        return self.ii.shape[0]

    def full_span_pos(self) -> int:
        pos = int(np.searchsorted(self.keys, self.L))
        if pos < len(self.keys) and self.keys[pos] == self.L:
            return pos
        raise RuntimeError("full unit span missing from interval table")


def unit_table(fz: FrozenIndex, table: CandidateTable, unit: int | None = None,
               text: str | None = None) -> UnitTable:
    if unit is not None:
        keys, fst, _ = fz.unit_interval_keys(unit)
        L = fz.unit_len(unit)
    else:
        keys, fst, _ = fz.text_interval_keys(text)
        L = len(text)
    ii = keys // (L + 1)
    jj = keys % (L + 1)
    gk = fst.astype(np.int64) * table.pad + (jj - ii)
    cid = table.ids_of_gkeys(gk)
    order2 = np.argsort(jj * (L + 1) + ii)
    return UnitTable(L, ii, jj, cid.astype(np.int64), keys, order2)


@dataclass
class DPResult:
    best: float
    has_path: bool
    f: np.ndarray
    fa: np.ndarray
    b: np.ndarray
    ba: np.ndarray
    marked: np.ndarray | None = None      # uint8 per interval
    ov_keys: np.ndarray | None = None     # unique start*(L+1)+end of overlaps

    def marked_positions(self, t: UnitTable) -> list[tuple[int, int]]:
        if self.marked is None:
            return []
        sel = np.flatnonzero(self.marked)
        return [(int(t.ii[v]), int(t.jj[v])) for v in sel]


def run_dp(t: UnitTable, logp: np.ndarray, allowed: np.ndarray,
           eps: float = EPS, mark: bool = True) -> DPResult:
    n = len(t)
    f = np.empty(n)
    fa = np.empty(n)
    b = np.empty(n)
    ba = np.empty(n)
    fold = np.empty(t.L + 1)
    accel.dp_forward(t.L, t.ii, t.jj, t.keys, t.cid, logp, allowed, f, fa, fold)
    accel.dp_backward(t.L, t.ii, t.jj, t.keys, t.cid, logp, allowed,
                      t.order2, b, ba, fold)
    best = float(accel.dp_best(t.L, t.jj, fa))
    has_path = best > accel.NEG / 2
    res = DPResult(best, has_path, f, fa, b, ba)
    if mark and has_path:
        marked = np.zeros(n, np.uint8)
        nov = accel.dp_mark(t.L, t.ii, t.jj, t.keys, t.cid, logp, allowed,
                            t.order2, f, b, best, eps, marked, fold,
                            np.empty(0, np.int64), False)
        ovbuf = np.empty(int(nov), np.int64)
        marked[:] = 0
        accel.dp_mark(t.L, t.ii, t.jj, t.keys, t.cid, logp, allowed,
                      t.order2, f, b, best, eps, marked, fold, ovbuf, True)
        res.marked = marked
        res.ov_keys = np.unique(ovbuf)
    return res


def ov_key_ids(t: UnitTable, ov_keys: np.ndarray) -> np.ndarray:
    """Candidate ids of overlap keys; empty overlaps map to id 0."""
    s = ov_keys // (t.L + 1)
    e = ov_keys % (t.L + 1)
    idx = np.searchsorted(t.keys, ov_keys)
    out = np.zeros(ov_keys.shape[0], np.int64)
    ne = s != e
    out[ne] = t.cid[idx[ne]]
    return out


def canonical_indices(t: UnitTable, dp: DPResult, logp: np.ndarray,
                      allowed: np.ndarray, eps: float = EPS) -> np.ndarray:
    """Stepwise smallest-(start, end) optimal decomposition, as positions
    into the interval table; empty when the unit is atomic."""
    out = np.empty(t.L + 1, np.int64)
    k = accel.canonical_path(t.L, t.ii, t.jj, t.keys, t.cid, logp, allowed,
                             dp.b, dp.ba, dp.best, eps, out)
    return out[:int(k)]


def collect_pass(fz: FrozenIndex, table: CandidateTable, logp: np.ndarray,
                 allowed: np.ndarray, eps: float = EPS, threads: int = 1,
                 on_unit=None):
    """One decomposition sweep over the corpus.

    Returns (next phrase multiset, overlap multiset) as int64 arrays over
    candidate ids. Every interval of every best decomposition counts once
    per unit; overlaps likewise, the empty overlap once per position it
    occurs at. Atomic units contribute their full span as a phrase."""
    nc = len(table)

    def do_range(lo: int, hi: int):
        pm = np.zeros(nc, np.int64)
        om = np.zeros(nc, np.int64)
        for k in range(lo, hi):
            t = unit_table(fz, table, unit=k)
            dp = run_dp(t, logp, allowed, eps, mark=True)
            if dp.has_path:
                sel = t.cid[dp.marked.view(bool)]
                np.add.at(pm, sel, 1)
                oids = ov_key_ids(t, dp.ov_keys)
                np.add.at(om, oids, 1)
            else:
                pm[t.cid[t.full_span_pos()]] += 1
            if on_unit is not None:
                on_unit(k, t, dp)
        return pm, om

    if threads <= 1 or on_unit is not None:
        return do_range(0, fz.n_units)
    from concurrent.futures import ThreadPoolExecutor
    n = fz.n_units
    bounds = np.linspace(0, n, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(lambda ab: do_range(*ab),
                            [(int(bounds[i]), int(bounds[i + 1]))
                             for i in range(threads)]))
    pm = sum(p for p, _ in parts)
    om = sum(o for _, o in parts)
    return pm, om


def bracket_render(text: str, spans: list[tuple[int, int]]) -> str:
    """Insert [ at each span start and ] at each span end; overlapping
    spans produce crossing brackets by design."""
    opens = np.zeros(len(text) + 1, np.int64)
    closes = np.zeros(len(text) + 1, np.int64)
    for i, j in spans:
        opens[i] += 1
        closes[j] += 1
    out = []
    for p in range(len(text) + 1):
        out.append("]" * int(closes[p]))
        out.append("[" * int(opens[p]))
        if p < len(text):
            out.append(text[p])
    return "".join(out)
