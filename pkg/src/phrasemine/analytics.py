"""Corpus analytics on top of a fitted model: significance forests over
atomic subphrases, kernel rankings, comparative term filtering, kernel
expansion, and phrase-length statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fwmodel import FittedModel
from .subphrase import SubphraseModel
from .symindex import FrozenIndex


# ------------------------------------------------------------ significance

def msc(sp: SubphraseModel, cid: int) -> int | None:
    """Most significant constituent: the canonical child with the smallest
    corpus occurrence count (leftmost on ties); None for atomic phrases."""
    ch = sp.children(cid)
    if ch is None:
        return None
    best = None
    best_occ = None
    for _off, sub in ch:
        occ = int(sp.fz.occ_of(sub))
        if best_occ is None or occ < best_occ:
            best, best_occ = sub, occ
    return best


def msc_chain(sp: SubphraseModel, cid: int) -> list[int]:
    """Chain cid -> msc(cid) -> ... ending at an atomic subphrase."""
    out = [cid]
    cur = cid
    while True:
        nxt = msc(sp, cur)
        if nxt is None:
            return out
        out.append(nxt)
        cur = nxt


def significance_counts(sp: SubphraseModel,
                        phrase_ids: list[int]) -> dict[int, int]:
    """For each atom: number of distinct phrases whose msc chain ends there."""
    rho: dict[int, int] = {}
    for pid in phrase_ids:
        atom = msc_chain(sp, pid)[-1]
        rho[atom] = rho.get(atom, 0) + 1
    return rho


# ----------------------------------------------------------------- network

@dataclass
class NetworkEdge:
    a: int        # atom ids, a < b by text order
    b: int
    phrase: int
    occ: int


def cooccurrence_edges(sp: SubphraseModel,
                       phrase_ids: list[int]) -> list[NetworkEdge]:
    """Unordered pairs of distinct atoms that are leaves of the same phrase,
    one edge row per phrase, weighted by the phrase's corpus occurrences."""
    edges = []
    for pid in phrase_ids:
        atoms = sorted({leaf for _off, leaf in sp.leaves(pid)},
                       key=lambda c: sp.fz.cand_text(c))
        occ = int(sp.fz.occ_of(pid))
        for x in range(len(atoms)):
            for y in range(x + 1, len(atoms)):
                edges.append(NetworkEdge(atoms[x], atoms[y], pid, occ))
    return edges


def network_gml(sp: SubphraseModel, edges: list[NetworkEdge]) -> str:
    """Serialize the atom co-occurrence network to GML."""
    import networkx as nx

    g = nx.Graph()
    for e in edges:
        a, b = int(e.a), int(e.b)
        for cid in (a, b):
            if not g.has_node(cid):
                g.add_node(cid, text=sp.fz.cand_text(cid),
                           kernel=sp.kernel_text(cid))
        w = g.edges[a, b]["weight"] if g.has_edge(a, b) else 0
        g.add_edge(a, b, weight=w + int(e.occ))
    return "\n".join(nx.generate_gml(g))


def seed_edges(sp: SubphraseModel, edges: list[NetworkEdge],
               seed: str) -> list[NetworkEdge]:
    """Edges touching an atom whose kernel or full text equals the seed."""
    def hit(cid: int) -> bool:
        return sp.kernel_text(cid) == seed or sp.fz.cand_text(cid) == seed

    return [e for e in edges if hit(e.a) or hit(e.b)]


# ---------------------------------------------------------- kernel ranking

@dataclass
class KernelRank:
    kernel: str
    score: int
    rank: int          # 1-based


def kernel_ranking(sp: SubphraseModel,
                   phrase_ids: list[int]) -> list[KernelRank]:
    """Group atoms by kernel text; score a kernel by the total number of
    phrases whose msc chains end in its atoms."""
    rho = significance_counts(sp, phrase_ids)
    scores: dict[str, int] = {}
    for atom, cnt in rho.items():
        kt = sp.kernel_text(atom)
        if not kt:
            continue
        scores[kt] = scores.get(kt, 0) + cnt
    rows = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return [KernelRank(k, s, r + 1) for r, (k, s) in enumerate(rows)]


def terminological_filter(ranking: list[KernelRank],
                          comparisons: list[dict[str, int]],
                          rank_cut: int) -> list[KernelRank]:
    """Drop kernels ranked above the cutoff in any comparison ranking;
    kernels absent from a comparison are kept."""
    out = []
    for row in ranking:
        drop = any(cmp.get(row.kernel, 1 << 30) < rank_cut
                   for cmp in comparisons)
        if not drop:
            out.append(row)
    return out


def load_ranking_tsv(path) -> dict[str, int]:
    """Read a kernel ranking TSV (kernel<TAB>score<TAB>rank) into
    kernel -> rank."""
    out: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("kernel\t"):
            raise ValueError(f"{path}: not a kernel ranking file")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            kernel, _score, rank = line.split("\t")
            out[_decode_field(kernel)] = int(rank)
    return out


# --------------------------------------------------------- kernel expansion

@dataclass
class Expansion:
    text: str
    occ: int


def strip_function_words(text: str, fw_texts: list[str]) -> str:
    """Iteratively delete the longest function-word literal prefix, then the
    longest literal suffix, until neither exists."""
    nonempty = sorted({f for f in fw_texts if f}, key=len, reverse=True)
    changed = True
    while changed and text:
        changed = False
        for f in nonempty:
            if text.startswith(f):
                text = text[len(f):]
                changed = True
                break
        for f in nonempty:
            if text.endswith(f):
                text = text[:len(text) - len(f)]
                changed = True
                break
    return text


def kernel_expansion(fz: FrozenIndex, phrase_ids: list[int],
                     fw_texts: list[str], kernel: str,
                     limit: int | None = None) -> list[Expansion]:
    """Phrases containing the kernel, trimmed of function-word borders,
    deduplicated with summed occurrences, ranked by occurrence."""
    agg: dict[str, int] = {}
    for pid in phrase_ids:
        text = fz.cand_text(pid)
        if kernel not in text:
            continue
        trimmed = strip_function_words(text, fw_texts)
        if kernel not in trimmed:
            continue
        agg[trimmed] = agg.get(trimmed, 0) + int(fz.occ_of(pid))
    rows = sorted(agg.items(), key=lambda kv: (-kv[1], kv[0]))
    if limit is not None:
        rows = rows[:limit]
    return [Expansion(t, o) for t, o in rows]


# ------------------------------------------------------------ length stats

def word_count(text: str, unit_prefix: bool, unit_suffix: bool) -> int:
    ws = sum(1 for ch in text if ch.isspace())
    return ws - 1 + int(unit_prefix) + int(unit_suffix)


@dataclass
class LengthRow:
    words: int
    variety: int          # distinct phrases
    multiplicity: int     # total model multiplicity
    occurrences: int      # total corpus occurrences
    ratio: float          # multiplicity / occurrences


def length_stats(fz: FrozenIndex, model: FittedModel,
                 phrase_ids: list[int],
                 lo: int = -1, hi: int = 30) -> list[LengthRow]:
    table = fz.candidate_table()
    acc: dict[int, list[int]] = {}
    for pid in phrase_ids:
        w = word_count(fz.cand_text(pid),
                       bool(table.unit_prefix[pid]),
                       bool(table.unit_suffix[pid]))
        if w < lo or w > hi:
            continue
        row = acc.setdefault(w, [0, 0, 0])
        row[0] += 1
        row[1] += int(model.m[pid])
        row[2] += int(fz.occ_of(pid))
    out = []
    for w in sorted(acc):
        v, m, o = acc[w]
        out.append(LengthRow(w, v, m, o, m / o if o else 0.0))
    return out


def spearman(xs: list[float], ys: list[float]) -> float:
    """Spearman rank correlation with average ranks on ties."""
    def ranks(vals):
        order = sorted(range(len(vals)), key=lambda k: vals[k])
        rk = [0.0] * len(vals)
        k = 0
        while k < len(vals):
            k2 = k
            while k2 + 1 < len(vals) and vals[order[k2 + 1]] == vals[order[k]]:
                k2 += 1
            avg = (k + k2) / 2 + 1
            for t in range(k, k2 + 1):
                rk[order[t]] = avg
            k = k2 + 1
        return rk

    rx, ry = ranks(xs), ranks(ys)
    mx, my = sum(rx) / len(rx), sum(ry) / len(ry)
    num = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    dx = sum((a - mx) ** 2 for a in rx) ** 0.5
    dy = sum((b - my) ** 2 for b in ry) ** 0.5
    if dx == 0 or dy == 0:
        return 0.0
    return num / (dx * dy)


_UNESC = {"t": "\t", "n": "\n", "r": "\r", "\\": "\\"}


def _decode_field(s: str) -> str:
    out = []
    k = 0
    while k < len(s):
        ch = s[k]
        if ch == "\\" and k + 1 < len(s) and s[k + 1] in _UNESC:
            out.append(_UNESC[s[k + 1]])
            k += 2
        else:
            out.append(ch)
            k += 1
    return "".join(out)


def encode_field(s: str) -> str:
    return (s.replace("\\", "\\\\").replace("\t", "\\t")
             .replace("\n", "\\n").replace("\r", "\\r"))
