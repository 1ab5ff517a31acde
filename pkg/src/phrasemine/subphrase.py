"""Subphrase structure: recursive decomposition of phrases over function-word
overlaps, content kernels, and functional schemes.

A phrase decomposes like a unit, except only function words may serve as
overlaps. The canonical decomposition (stepwise smallest (start, end) among
optimal ones) defines a tree whose leaves are atomic subphrases. A leaf's
kernel is what remains after deleting its most probable function-word prefix
and suffix; the functional scheme of a phrase replaces each leaf kernel with
'|' and keeps the literal text between kernels, so scheme slots concatenate
with kernels back to the exact phrase text.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import EPS, canonical_indices, run_dp, unit_table
from .fwmodel import FittedModel
from .symindex import FrozenIndex


class MalformedTreeError(ValueError):
    """Leaves do not form an advancing left-to-right chain."""


@dataclass
class SchemeRecord:
    scheme: str                  # slots joined with '|' per kernel
    slots: tuple[str, ...]       # n_kernels + 1 literal gap texts
    kernels: tuple[str, ...]
    spans: tuple[tuple[int, int], ...]   # absolute kernel spans

    def reconstruct(self) -> str:
        parts = [self.slots[0]]
        for k, s in zip(self.kernels, self.slots[1:]):
            parts.append(k)
            parts.append(s)
        return "".join(parts)


class SubphraseModel:
    def __init__(self, fz: FrozenIndex, model: FittedModel,
                 fw_ids: list[int], eps: float = EPS):
        self.fz = fz
        self.model = model
        self.eps = eps
        self.table = fz.candidate_table()
        self.allowed = np.zeros(len(self.table), np.uint8)
        for cid in fw_ids:
            self.allowed[cid] = 1
        self.logp = model.boost.logp
        self.fw_texts = sorted((fz.cand_text(cid) for cid in fw_ids),
                               key=len, reverse=True)
        self._pfw = {fz.cand_text(cid): float(model.boost.pfw[cid])
                     for cid in fw_ids}
        self._children: dict[int, list[tuple[int, int]] | None] = {}
        self._leaves: dict[int, list[tuple[int, int]]] = {}
        self._kspan: dict[int, tuple[int, int]] = {}
        self._reprs: dict[int, frozenset | None] = {}

    # ----------------------------------------------------------- tree shape

    def children(self, cid: int) -> list[tuple[int, int]] | None:
        """Canonical decomposition as (offset, child id) rows, or None for
        an atomic phrase."""
        if cid in self._children:
            return self._children[cid]
        text = self.fz.cand_text(cid)
        t = unit_table(self.fz, self.table, text=text)
        dp = run_dp(t, self.logp, self.allowed, self.eps, mark=False)
        if not dp.has_path:
            self._children[cid] = None
            return None
        ci = canonical_indices(t, dp, self.logp, self.allowed, self.eps)
        if len(ci) == 0:
            self._children[cid] = None
            return None
        rows = [(int(t.ii[v]), int(t.cid[v])) for v in ci]
        self._children[cid] = rows
        return rows

    def leaves(self, cid: int) -> list[tuple[int, int]]:
        """Atomic subphrases of the canonical tree as (absolute offset, id).

        Consecutive children overlap on their shared function word, so both
        flanks segment the overlap region independently; the flattened chain
        keeps the left sibling's segmentation and drops any leaf that does
        not extend coverage to the right. The result is a single advancing
        chain whose leaves cover the phrase exactly once left to right.
        """
        if cid in self._leaves:
            return self._leaves[cid]
        ch = self.children(cid)
        if ch is None:
            out = [(0, cid)]
        else:
            out = []
            covered = 0
            length = self.table.length
            for off, sub in ch:
                for o2, s2 in self.leaves(sub):
                    end = off + o2 + int(length[s2])
                    if end <= covered:
                        continue
                    out.append((off + o2, s2))
                    covered = end
        self._leaves[cid] = out
        return out

    def tree_nodes(self, cid: int) -> list[tuple[int, int]]:
        """All nodes of the canonical tree as (absolute offset, id), root
        first, depth-first."""
        out = [(0, cid)]
        ch = self.children(cid)
        if ch:
            for off, sub in ch:
                out.extend((off + o2, s2) for o2, s2 in self.tree_nodes(sub))
        return out

    # ------------------------------------------------------------- kernels

    def kernel_span(self, cid: int) -> tuple[int, int]:
        """Kernel span within the phrase text after deleting the most
        probable (ties: longest) function-word prefix and suffix."""
        if cid in self._kspan:
            return self._kspan[cid]
        text = self.fz.cand_text(cid)
        L = len(text)
        pres = [f for f in self.fw_texts if f and text.startswith(f)]
        pre = max(pres, key=lambda f: (self._pfw[f], len(f))) if pres else ""
        if "" in self._pfw and pres:
            if (self._pfw[""], 0) > (self._pfw[pre], len(pre)):
                pre = ""
        sufs = [f for f in self.fw_texts if f and text.endswith(f)]
        suf = max(sufs, key=lambda f: (self._pfw[f], len(f))) if sufs else ""
        if "" in self._pfw and sufs:
            if (self._pfw[""], 0) > (self._pfw[suf], len(suf)):
                suf = ""
        ks, ke = len(pre), L - len(suf)
        if ks > ke:
            ks = ke = min(ks, L)
        self._kspan[cid] = (ks, ke)
        return ks, ke

    def kernel_text(self, cid: int) -> str:
        ks, ke = self.kernel_span(cid)
        return self.fz.cand_text(cid)[ks:ke]

    # -------------------------------------------------------------- schemes

    def scheme(self, cid: int) -> SchemeRecord:
        """Render the leaf chain as alternating gap slots and kernels.

        Each leaf strips its borders independently, so when consecutive
        leaves overlap, both may claim characters of the shared overlap as
        kernel content; the representation assigns each character once, so
        shared characters stay with the left kernel and are clipped from the
        right one. Raises MalformedTreeError when the leaf chain itself does
        not advance (a leaf ends at or before the previous leaf's end)."""
        text = self.fz.cand_text(cid)
        length = self.table.length
        prev_end = 0
        raw = []
        for off, leaf in self.leaves(cid):
            end = off + int(length[leaf])
            if end <= prev_end:
                raise MalformedTreeError(
                    f"leaf chain out of order in phrase {text!r}")
            prev_end = end
            ks, ke = self.kernel_span(leaf)
            raw.append((off + ks, off + ke))
        prev = 0
        slots = []
        spans = []
        for a, b in raw:
            a = max(a, prev)
            b = max(b, a)
            slots.append(text[prev:a])
            spans.append((a, b))
            prev = b
        slots.append(text[prev:])
        kernels = tuple(text[a:b] for a, b in spans)
        scheme = "|".join(slots)
        return SchemeRecord(scheme, tuple(slots), kernels, tuple(spans))

    # --------------------------------------- every optimal leaf representation

    def _join(self, chain: tuple, rep: tuple) -> tuple:
        """Append a child's leaf chain to an accumulated chain under the same
        advancing rule as leaves(): leading leaves of the child that end
        inside the span the chain already covers re-segment claimed text and
        are dropped."""
        if not chain:
            return rep
        length = self.table.length
        off0, c0 = chain[-1]
        covered = off0 + int(length[c0])
        i = 0
        for off, c in rep:
            if off + int(length[c]) > covered:
                break
            i += 1
        return chain + rep[i:]

    def _all_paths(self, t, dp, cap: int):
        """All optimal decompositions as index sequences; None if more than
        cap exist."""
        thr = dp.best - self.eps
        n = len(t)
        out: list[list[int]] = []

        def nexts(v):
            lo = int(np.searchsorted(t.keys, (t.ii[v] + 1) * (t.L + 1)))
            for w in range(lo, n):
                if t.ii[w] > t.jj[v]:
                    break
                if t.jj[w] <= t.jj[v]:
                    continue
                yield w

        def wgt(s, e):
            if s == e:
                oid = 0
            else:
                pos = int(np.searchsorted(t.keys, s * (t.L + 1) + e))
                if pos >= n or t.keys[pos] != s * (t.L + 1) + e:
                    return None
                oid = int(t.cid[pos])
            if not self.allowed[oid]:
                return None
            return float(self.logp[oid])

        def rec(v, acc, path):
            if len(out) > cap:
                raise OverflowError
            if t.jj[v] == t.L:
                if acc >= thr:
                    out.append(path)
                return
            for w in nexts(v):
                ww = wgt(int(t.ii[w]), int(t.jj[v]))
                if ww is None:
                    continue
                if acc + ww + dp.b[w] >= thr:
                    rec(w, acc + ww, path + [w])

        try:
            for v in range(n):
                if t.ii[v] != 0:
                    break
                if dp.ba[v] >= thr:
                    rec(v, 0.0, [v])
        except OverflowError:
            return None
        return out

    def all_leaf_reprs(self, cid: int, cap: int = 64) -> frozenset | None:
        """Set of leaf representations over all optimal trees; None when the
        variant count exceeds cap."""
        if cid in self._reprs:
            return self._reprs[cid]
        self._reprs[cid] = frozenset()   # cycle guard; phrases never recurse
        text = self.fz.cand_text(cid)
        t = unit_table(self.fz, self.table, text=text)
        dp = run_dp(t, self.logp, self.allowed, self.eps, mark=False)
        if not dp.has_path:
            res = frozenset({((0, cid),)})
            self._reprs[cid] = res
            return res
        paths = self._all_paths(t, dp, cap)
        if paths is None:
            self._reprs[cid] = None
            return None
        acc: set[tuple] = set()
        for path in paths:
            parts: list[list[tuple]] = []
            dead = False
            for v in path:
                sub = self.all_leaf_reprs(int(t.cid[v]), cap)
                if sub is None:
                    self._reprs[cid] = None
                    return None
                off = int(t.ii[v])
                parts.append([tuple((off + o, c) for o, c in rep)
                              for rep in sub])
                if not parts[-1]:
                    dead = True
            if dead:
                continue
            combos = [()]
            for options in parts:
                combos = [self._join(c, o) for c in combos for o in options]
                if len(combos) > cap:
                    self._reprs[cid] = None
                    return None
            acc.update(combos)
            if len(acc) > cap:
                self._reprs[cid] = None
                return None
        res = frozenset(acc)
        self._reprs[cid] = res
        return res
