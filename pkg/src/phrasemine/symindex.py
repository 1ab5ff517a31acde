"""Symbol index: suffix automata over the corpus in both directions.

The live index accepts units one at a time and answers candidate-interval
queries directly off the automaton. Freezing produces immutable CSR arrays
that the statistics and decomposition passes operate on, plus the global
candidate table.

A candidate substring has at least two distinct left-context symbols or an
occurrence at a unit start, and at least two distinct right-context symbols
or an occurrence at a unit end. The empty string is a candidate by
convention and always holds id 0 in the candidate table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import accel
from .corpus import Corpus

SNAPSHOT_MAGIC = "phrasemine-index"
SNAPSHOT_VERSION = 1


def encode(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32).astype(np.int32)


def decode(codes: np.ndarray) -> str:
    return codes.astype(np.uint32).tobytes().decode("utf-32-le")


def _grow(arr: np.ndarray, cap: int) -> np.ndarray:
    out = np.zeros(cap, dtype=arr.dtype)
    out[:arr.shape[0]] = arr
    return out


class _Direction:
    """One online suffix automaton plus its edge list."""

    def __init__(self, state_cap: int, edge_cap: int, record_ev: bool):
        self.trans = accel.new_transition_dict()
        self.length = np.zeros(state_cap, np.int32)
        self.link = np.zeros(state_cap, np.int32)
        self.term = np.zeros(state_cap, np.uint8)
        self.cnt = np.zeros(state_cap, np.int64)
        self.outdeg = np.zeros(state_cap, np.int32)
        self.first_unit = np.zeros(state_cap, np.int32)
        self.first_end = np.zeros(state_cap, np.int32)
        self.ehead = np.full(state_cap, -1, np.int64)
        self.enext = np.zeros(edge_cap, np.int64)
        self.esym = np.zeros(edge_cap, np.int32)
        self.link[0] = -1
        self.n_states = 1
        self.n_edges = 0
        self.record_ev = record_ev
        self.ev_state = np.zeros(1, np.int32)

    def ensure(self, unit_len: int, total_positions: int):
        need_states = self.n_states + 2 * unit_len + 2
        if need_states > self.length.shape[0]:
            cap = max(need_states, 2 * self.length.shape[0])
            for name in ("length", "link", "term", "cnt", "outdeg",
                         "first_unit", "first_end", "ehead"):
                setattr(self, name, _grow(getattr(self, name), cap))
        need_edges = self.n_edges + 8 * unit_len + 64
        if need_edges > self.esym.shape[0]:
            cap = max(need_edges, 2 * self.esym.shape[0])
            self.enext = _grow(self.enext, cap)
            self.esym = _grow(self.esym, cap)
        if self.record_ev and total_positions > self.ev_state.shape[0]:
            cap = max(total_positions, 2 * self.ev_state.shape[0])
            self.ev_state = _grow(self.ev_state, cap)

    def add(self, codes: np.ndarray, lo: int, hi: int, unit_id: int) -> bool:
        ns, ne = accel.sam_add_unit(
            codes, lo, hi, unit_id, self.trans, self.length, self.link,
            self.term, self.cnt, self.outdeg, self.first_unit, self.first_end,
            self.ehead, self.enext, self.esym, self.n_states, self.n_edges,
            self.ev_state, self.record_ev)
        if ns < 0:
            return False
        self.n_states = int(ns)
        self.n_edges = int(ne)
        return True


@dataclass
class FrozenDirection:
    tstart: np.ndarray
    tsym: np.ndarray
    tdst: np.ndarray
    length: np.ndarray
    minlen: np.ndarray
    link: np.ndarray
    term: np.ndarray
    cnt: np.ndarray
    rok: np.ndarray
    rok_next: np.ndarray
    first_unit: np.ndarray
    first_end: np.ndarray

    @classmethod
    def from_live(cls, d: _Direction, propagate: bool) -> "FrozenDirection":
        n = d.n_states
        nk = len(d.trans)
        keys = np.empty(nk, np.int64)
        vals = np.empty(nk, np.int64)
        accel.dict_dump(d.trans, keys, vals)
        order = np.argsort(keys)
        keys = keys[order]
        vals = vals[order]
        tsrc = keys // accel.KPAD
        tstart = np.searchsorted(tsrc, np.arange(n + 1, dtype=np.int64))
        tsym = (keys % accel.KPAD).astype(np.int32)
        tdst = vals.astype(np.int32)
        length = d.length[:n].copy()
        link = d.link[:n].copy()
        term = d.term[:n].copy()
        cnt = d.cnt[:n].copy()
        lorder = np.argsort(length, kind="stable")
        if propagate:
            accel.propagate_counts(lorder, link, cnt)
        minlen = np.empty(n, np.int32)
        minlen[0] = 0
        if n > 1:
            minlen[1:] = length[link[1:]] + 1
        deg = (tstart[1:] - tstart[:-1]).astype(np.int32)
        rok = ((deg >= 2) | (term != 0)).astype(np.uint8)
        rok_next = np.empty(n, np.int32)
        accel.fill_rok_next(lorder, link, rok, rok_next)
        return cls(tstart, tsym, tdst, length, minlen, link, term, cnt,
                   rok, rok_next, d.first_unit[:n].copy(), d.first_end[:n].copy())

    def walk(self, codes: np.ndarray, lo: int, hi: int):
        L = hi - lo
        states = np.empty(L + 1, np.int32)
        mlen = np.empty(L + 1, np.int32)
        accel.walk_states(codes, lo, hi, self.tstart, self.tsym, self.tdst,
                          self.length, self.link, states, mlen)
        return states, mlen

    def locate(self, codes: np.ndarray) -> int:
        """State of an exact full match, or -1."""
        if codes.shape[0] == 0:
            return 0
        states, mlen = self.walk(codes, 0, codes.shape[0])
        if mlen[-1] == codes.shape[0]:
            return int(states[-1])
        return -1

    def degree(self, state: int) -> int:
        return int(self.tstart[state + 1] - self.tstart[state])

    def side_triples(self, is_rev: bool, states, mlen, L: int):
        n = accel.side_triples(L, is_rev, states, mlen, self.length,
                               self.minlen, self.link, self.rok_next,
                               np.empty(0, np.int64), np.empty(0, np.int32), False)
        keys = np.empty(n, np.int64)
        sts = np.empty(n, np.int32)
        accel.side_triples(L, is_rev, states, mlen, self.length, self.minlen,
                           self.link, self.rok_next, keys, sts, True)
        order = np.argsort(keys)
        return keys[order], sts[order]


@dataclass
class CandidateTable:
    """Global candidate inventory: id 0 is the empty string, ids 1.. are
    sorted by packed key fstate * pad + length."""
    pad: np.ndarray          # int64 scalar
    keys: np.ndarray         # int64, keys[0] == -1 for the empty string
    fstate: np.ndarray
    rstate: np.ndarray
    length: np.ndarray
    occ: np.ndarray
    unit_prefix: np.ndarray  # uint8: some occurrence starts a unit class-wide
    unit_suffix: np.ndarray

    def __len__(self):
        return self.keys.shape[0]

    def ids_of_gkeys(self, gkeys: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.keys, gkeys)
        ok = (idx < self.keys.shape[0])
        idx = np.minimum(idx, self.keys.shape[0] - 1)
        ok &= self.keys[idx] == gkeys
        return np.where(ok, idx, -1)


class SymbolIndex:
    """Incremental two-directional index over a growing unit list."""

    def __init__(self, expect_symbols: int = 1024):
        cap_s = 2 * expect_symbols + 8
        cap_e = 4 * expect_symbols + 1024
        self.fwd = _Direction(cap_s, cap_e, record_ev=True)
        self.rev = _Direction(cap_s, cap_e, record_ev=False)
        self.codes = np.zeros(max(expect_symbols, 16), np.int32)
        self.rcodes = np.zeros(max(expect_symbols, 16), np.int32)
        self.offsets = [0]
        self.units: list[str] = []
        self._frozen: "FrozenIndex | None" = None

    @classmethod
    def from_corpus(cls, corpus: Corpus) -> "SymbolIndex":
        idx = cls(expect_symbols=corpus.total_symbols)
        for u in corpus.units:
            idx.add_unit(u)
        return idx

    @property
    def n_units(self) -> int:
        return len(self.units)

    @property
    def total_symbols(self) -> int:
        return self.offsets[-1]

    def add_unit(self, text: str) -> None:
        if not text:
            raise ValueError("empty unit")
        self._frozen = None
        uc = encode(text)
        L = uc.shape[0]
        lo = self.offsets[-1]
        hi = lo + L
        if hi > self.codes.shape[0]:
            cap = max(hi, 2 * self.codes.shape[0])
            self.codes = _grow(self.codes, cap)
            self.rcodes = _grow(self.rcodes, cap)
        self.codes[lo:hi] = uc
        self.rcodes[lo:hi] = uc[::-1]
        uid = len(self.units)
        for is_fwd in (True, False):
            while True:
                d = self.fwd if is_fwd else self.rev
                buf = self.codes if is_fwd else self.rcodes
                d.ensure(L, hi)
                if d.add(buf, lo, hi, uid):
                    break
                self._rebuild_direction(is_fwd)
        self.units.append(text)
        self.offsets.append(hi)

    def _rebuild_direction(self, is_fwd: bool) -> None:
        """Replay all stored units into a fresh automaton with a larger edge
        buffer. The overflowed original is discarded wholesale."""
        old = self.fwd if is_fwd else self.rev
        cap_e = 2 * old.esym.shape[0]
        buf = self.codes if is_fwd else self.rcodes
        while True:
            d = _Direction(old.length.shape[0], cap_e, old.record_ev)
            d.ev_state = np.zeros(old.ev_state.shape[0], np.int32)
            ok = True
            for uid in range(len(self.units)):
                lo, hi = self.offsets[uid], self.offsets[uid + 1]
                d.ensure(hi - lo, hi)
                if not d.add(buf, lo, hi, uid):
                    ok = False
                    break
            if ok:
                break
            cap_e *= 2
        if is_fwd:
            self.fwd = d
        else:
            self.rev = d

    # live queries (used by the incremental mining stage) ------------------

    def _live_walk(self, d: _Direction, buf: np.ndarray, lo: int, hi: int):
        L = hi - lo
        states = np.empty(L + 1, np.int32)
        mlen = np.empty(L + 1, np.int32)
        accel.live_walk(buf, lo, hi, d.trans, d.length, d.link, states, mlen)
        return states, mlen

    def live_candidate_intervals(self, text: str) -> np.ndarray:
        """(k, 2) array of candidate intervals of `text` against the current
        index contents, sorted by (start, end)."""
        uc = encode(text)
        L = uc.shape[0]
        out = []
        sides = []
        for d, arr, is_rev in ((self.fwd, uc, False), (self.rev, uc[::-1].copy(), True)):
            states, mlen = self._live_walk(d, arr, 0, L)
            n = accel.live_side_triples(L, is_rev, states, mlen, d.length,
                                        d.link, d.term, d.outdeg,
                                        np.empty(0, np.int64), False)
            keys = np.empty(n, np.int64)
            accel.live_side_triples(L, is_rev, states, mlen, d.length,
                                    d.link, d.term, d.outdeg, keys, True)
            keys.sort()
            sides.append(keys)
        n = accel.merge_keys_plain(sides[0], sides[1], np.empty(0, np.int64), False)
        keys = np.empty(n, np.int64)
        accel.merge_keys_plain(sides[0], sides[1], keys, True)
        out = np.empty((n, 2), np.int64)
        out[:, 0] = keys // (L + 1)
        out[:, 1] = keys % (L + 1)
        return out

    def freeze(self) -> "FrozenIndex":
        if self._frozen is None:
            self._frozen = FrozenIndex(self)
        return self._frozen


class FrozenIndex:
    def __init__(self, src: SymbolIndex | None, payload: dict | None = None):
        if src is not None:
            if not src.units:
                raise ValueError("cannot freeze an empty index")
            self.units = list(src.units)
            self.offsets = np.asarray(src.offsets, np.int64)
            n = self.offsets[-1]
            self.codes = src.codes[:n].copy()
            self.fwd = FrozenDirection.from_live(src.fwd, propagate=True)
            self.rev = FrozenDirection.from_live(src.rev, propagate=False)
            ev = src.fwd.ev_state[:n]
            ein = np.empty(self.fwd.length.shape[0], np.int64)
            eout = np.empty_like(ein)
            counts = np.bincount(self.fwd.link[1:].astype(np.int64),
                                 minlength=self.fwd.length.shape[0])
            cstart = np.zeros(self.fwd.length.shape[0] + 1, np.int64)
            np.cumsum(counts, out=cstart[1:])
            clist = np.argsort(self.fwd.link[1:], kind="stable").astype(np.int64) + 1
            accel.euler_order(cstart, clist, ein, eout)
            self.euler_in = ein
            self.euler_out = eout
            ev_in = ein[ev]
            order = np.argsort(ev_in, kind="stable")
            self.pos_in_sorted = ev_in[order]
            self.pos_g = order.astype(np.int64)
            self._table: CandidateTable | None = None
        else:
            self.__dict__.update(payload)
            self._table = None

    # ------------------------------------------------------------------ core

    @property
    def n_units(self) -> int:
        return len(self.units)

    @property
    def total_symbols(self) -> int:
        return int(self.offsets[-1])

    @property
    def max_unit_len(self) -> int:
        return int((self.offsets[1:] - self.offsets[:-1]).max())

    @property
    def digest(self) -> str:
        return Corpus(self.units).digest()

    def unit_len(self, k: int) -> int:
        return int(self.offsets[k + 1] - self.offsets[k])

    def is_candidate(self, text: str) -> bool:
        if text == "":
            return True
        fc = encode(text)
        fs = self.fwd.locate(fc)
        if fs < 0:
            return False
        rs = self.rev.locate(fc[::-1].copy())
        return bool(self.fwd.rok[fs]) and bool(self.rev.rok[rs])

    def occ(self, text: str) -> int:
        if text == "":
            return self.total_symbols
        fs = self.fwd.locate(encode(text))
        return int(self.fwd.cnt[fs]) if fs >= 0 else 0

    def occ_of(self, cid: int) -> int:
        return int(self.candidate_table().occ[cid])

    def branching(self, text: str) -> dict:
        """Context profile of a substring; zeros if it does not occur."""
        fc = encode(text)
        fs = self.fwd.locate(fc)
        if text == "":
            fs = 0
        if fs < 0:
            return {"occurs": False, "left_symbols": 0, "right_symbols": 0,
                    "unit_prefix": False, "unit_suffix": False}
        rs = self.rev.locate(fc[::-1].copy())
        return {
            "occurs": True,
            "left_symbols": self.rev.degree(rs),
            "right_symbols": self.fwd.degree(fs),
            "unit_prefix": bool(self.rev.term[rs]),
            "unit_suffix": bool(self.fwd.term[fs]),
        }

    # ------------------------------------------------------- interval queries

    def _extract(self, codes: np.ndarray, lo: int, hi: int):
        """Candidate intervals of codes[lo:hi]: (keys, fstates, rstates),
        keys sorted by start*(L+1)+end."""
        L = hi - lo
        states, mlen = self.fwd.walk(codes, lo, hi)
        fk, fst = self.fwd.side_triples(False, states, mlen, L)
        rc = codes[lo:hi][::-1].copy()
        rstates, rmlen = self.rev.walk(rc, 0, L)
        rk, rst = self.rev.side_triples(True, rstates, rmlen, L)
        n = accel.merge_keys(fk, fst, rk, rst, np.empty(0, np.int64),
                             np.empty(0, np.int32), np.empty(0, np.int32), False)
        ok = np.empty(n, np.int64)
        of = np.empty(n, np.int32)
        orr = np.empty(n, np.int32)
        accel.merge_keys(fk, fst, rk, rst, ok, of, orr, True)
        return ok, of, orr

    def unit_interval_keys(self, k: int):
        return self._extract(self.codes, int(self.offsets[k]), int(self.offsets[k + 1]))

    def text_interval_keys(self, text: str):
        uc = encode(text)
        return self._extract(uc, 0, uc.shape[0])

    def candidate_intervals(self, text: str) -> np.ndarray:
        uc = encode(text)
        L = uc.shape[0]
        keys, _, _ = self._extract(uc, 0, L)
        out = np.empty((keys.shape[0], 2), np.int64)
        out[:, 0] = keys // (L + 1)
        out[:, 1] = keys % (L + 1)
        return out

    # --------------------------------------------------------- occurrences

    def occurrences(self, text: str, limit: int | None = None,
                    offset: int = 0) -> tuple[list[tuple[int, int, int]], int]:
        """((unit, start, end) rows in corpus order, total count)."""
        if text == "":
            return [], self.total_symbols
        fc = encode(text)
        fs = self.fwd.locate(fc)
        if fs < 0:
            return [], 0
        lo = np.searchsorted(self.pos_in_sorted, self.euler_in[fs], side="left")
        hi = np.searchsorted(self.pos_in_sorted, self.euler_out[fs], side="left")
        g = np.sort(self.pos_g[lo:hi])
        total = int(g.shape[0])
        if offset:
            g = g[offset:]
        if limit is not None:
            g = g[:limit]
        units = np.searchsorted(self.offsets, g, side="right") - 1
        ends = g - self.offsets[units] + 1
        n = fc.shape[0]
        return [(int(u), int(e - n), int(e)) for u, e in zip(units, ends)], total

    # ------------------------------------------------------- candidate table

    def candidate_table(self) -> CandidateTable:
        if self._table is not None:
            return self._table
        pad = np.int64(self.max_unit_len + 1)
        uniq: np.ndarray | None = None
        chunk: list[np.ndarray] = []
        pending = 0
        for k in range(self.n_units):
            keys, fst, _ = self.unit_interval_keys(k)
            L = self.unit_len(k)
            lens = keys % (L + 1) - keys // (L + 1)
            chunk.append(fst.astype(np.int64) * pad + lens)
            pending += lens.shape[0]
            if pending >= 4_000_000:
                part = np.unique(np.concatenate(chunk))
                uniq = part if uniq is None else np.union1d(uniq, part)
                chunk, pending = [], 0
        if chunk:
            part = np.unique(np.concatenate(chunk))
            uniq = part if uniq is None else np.union1d(uniq, part)
        if uniq is None:
            uniq = np.empty(0, np.int64)
        nc = uniq.shape[0] + 1
        keys = np.empty(nc, np.int64)
        keys[0] = -1
        keys[1:] = uniq
        fstate = np.zeros(nc, np.int32)
        length = np.zeros(nc, np.int32)
        fstate[1:] = (uniq // pad).astype(np.int32)
        length[1:] = (uniq % pad).astype(np.int32)
        rstate = np.zeros(nc, np.int32)
        filled = np.zeros(nc, bool)
        for k in range(self.n_units):
            kk, fst, rst = self.unit_interval_keys(k)
            L = self.unit_len(k)
            lens = kk % (L + 1) - kk // (L + 1)
            gk = fst.astype(np.int64) * pad + lens
            idx = np.searchsorted(keys, gk)
            need = ~filled[idx]
            if need.any():
                rstate[idx[need]] = rst[need]
                filled[idx[need]] = True
        occ = np.zeros(nc, np.int64)
        occ[0] = self.total_symbols
        occ[1:] = self.fwd.cnt[fstate[1:]]
        upre = np.zeros(nc, np.uint8)
        usuf = np.zeros(nc, np.uint8)
        upre[1:] = self.rev.term[rstate[1:]]
        usuf[1:] = self.fwd.term[fstate[1:]]
        upre[0] = usuf[0] = 1
        self._table = CandidateTable(pad, keys, fstate, rstate, length,
                                     occ, upre, usuf)
        return self._table

    def cand_text(self, cid: int) -> str:
        t = self.candidate_table()
        if cid == 0:
            return ""
        fs = int(t.fstate[cid])
        ln = int(t.length[cid])
        u = int(self.fwd.first_unit[fs])
        e = int(self.offsets[u]) + int(self.fwd.first_end[fs])
        return decode(self.codes[e - ln:e])

    def cand_id(self, text: str) -> int:
        """Candidate id of an exact string, or -1."""
        if text == "":
            return 0
        t = self.candidate_table()
        fs = self.fwd.locate(encode(text))
        if fs < 0:
            return -1
        gk = np.int64(fs) * t.pad + len(text)
        i = int(np.searchsorted(t.keys, gk))
        if i < len(t.keys) and t.keys[i] == gk:
            return i
        return -1

    # ------------------------------------------------------------- snapshot

    def save(self, path) -> None:
        meta = {
            "magic": SNAPSHOT_MAGIC,
            "version": SNAPSHOT_VERSION,
            "units": self.n_units,
            "symbols": self.total_symbols,
            "digest": Corpus(self.units).digest(),
        }
        arrays = {"offsets": self.offsets, "codes": self.codes,
                  "euler_in": self.euler_in, "euler_out": self.euler_out,
                  "pos_in_sorted": self.pos_in_sorted, "pos_g": self.pos_g}
        for tag, d in (("f", self.fwd), ("r", self.rev)):
            for fld in ("tstart", "tsym", "tdst", "length", "minlen", "link",
                        "term", "cnt", "rok", "rok_next", "first_unit",
                        "first_end"):
                arrays[f"{tag}_{fld}"] = getattr(d, fld)
        np.savez_compressed(path, __meta__=np.frombuffer(
            json.dumps(meta).encode(), np.uint8), **arrays)

    @classmethod
    def load(cls, path) -> "FrozenIndex":
        with np.load(path) as z:
            try:
                meta = json.loads(bytes(z["__meta__"]))
            except KeyError:
                raise ValueError(f"{path}: not an index snapshot") from None
            if meta.get("magic") != SNAPSHOT_MAGIC:
                raise ValueError(f"{path}: bad snapshot magic")
            if meta.get("version") != SNAPSHOT_VERSION:
                raise ValueError(f"{path}: unsupported snapshot version "
                                 f"{meta.get('version')}")
            payload = {
                "offsets": z["offsets"], "codes": z["codes"],
                "euler_in": z["euler_in"], "euler_out": z["euler_out"],
                "pos_in_sorted": z["pos_in_sorted"], "pos_g": z["pos_g"],
            }
            for tag, name in (("f", "fwd"), ("r", "rev")):
                payload[name] = FrozenDirection(
                    *[z[f"{tag}_{fld}"] for fld in
                      ("tstart", "tsym", "tdst", "length", "minlen", "link",
                       "term", "cnt", "rok", "rok_next", "first_unit",
                       "first_end")])
            off = payload["offsets"]
            codes = payload["codes"]
            payload["units"] = [decode(codes[off[k]:off[k + 1]])
                                for k in range(off.shape[0] - 1)]
            obj = cls(None, payload)
            obj._meta = meta
            return obj
