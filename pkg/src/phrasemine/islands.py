"""Novelty islands: per-unit spans not covered by prior corpus material.

Each unit is compared against the incremental index of all earlier units. A
position is covered when it lies inside an occurrence of an earlier-corpus
candidate that is bounded on both sides — each side delimited by a unit border
or by a function-word occurrence inside the interval, with the degenerate case
excluded where the only available delimiter on both sides is one and the same
function-word occurrence filling the whole interval. Maximal uncovered runs
are the islands; each island extends left/right by the shortest function word
ending/starting at its edge, capped at unit borders.

Abstraction replaces every island core with one reserved symbol and refits the
model on the abstract corpus; phrases containing the symbol are island schemes
and pull back to original text through per-unit span maps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus
from .symindex import SymbolIndex

UNK = "￿"


class AbstractionError(ValueError):
    """The reserved placeholder symbol already occurs in the corpus."""


@dataclass
class IslandRecord:
    unit: int
    start: int            # core span in the original unit
    end: int
    ext_start: int        # extended span
    ext_end: int
    text: str
    ext_text: str


def _fw_len_maps(unit: str, fws: list[str]) -> tuple[dict, dict]:
    """Shortest function-word length starting at / ending at each position."""
    minlen_start: dict[int, int] = {}
    minlen_end: dict[int, int] = {}
    for f in fws:
        if not f:
            continue
        k = unit.find(f)
        while k >= 0:
            n = len(f)
            if minlen_start.get(k, 1 << 30) > n:
                minlen_start[k] = n
            e = k + n
            if minlen_end.get(e, 1 << 30) > n:
                minlen_end[e] = n
            k = unit.find(f, k + 1)
    return minlen_start, minlen_end


def coverage_mask(unit: str, intervals: list[tuple[int, int]],
                  fws: list[str], fwset: set[str]) -> list[bool]:
    L = len(unit)
    covered = [False] * L
    minlen_start, minlen_end = _fw_len_maps(unit, fws)
    big = 1 << 30
    for i, j in intervals:
        span = j - i
        has_short_left = i == 0 or minlen_start.get(i, big) < span
        has_short_right = j == L or minlen_end.get(j, big) < span
        has_full = unit[i:j] in fwset
        if not (has_short_left or has_full):
            continue
        if not (has_short_right or has_full):
            continue
        if not (has_short_left or has_short_right):
            continue   # only delimiter pair is the interval itself
        for p in range(i, j):
            covered[p] = True
    return covered


def _runs(covered: list[bool]) -> list[tuple[int, int]]:
    runs = []
    p = 0
    L = len(covered)
    while p < L:
        if not covered[p]:
            q = p
            while q < L and not covered[q]:
                q += 1
            runs.append((p, q))
            p = q
        else:
            p += 1
    return runs


def _extend(unit: str, a: int, b: int,
            minlen_start: dict, minlen_end: dict) -> tuple[int, int]:
    ea = a - minlen_end[a] if a > 0 and a in minlen_end else a
    eb = b + minlen_start[b] if b < len(unit) and b in minlen_start else b
    return max(ea, 0), min(eb, len(unit))


def find_islands(corpus: Corpus, fws: list[str],
                 progress=None) -> list[IslandRecord]:
    """Scan units in order against the incremental index of earlier units."""
    fws = [f for f in fws if f]
    fwset = set(fws)
    ix = SymbolIndex()
    out: list[IslandRecord] = []
    for t, unit in enumerate(corpus.units):
        if t == 0:
            covered = [False] * len(unit)
        else:
            iv = ix.live_candidate_intervals(unit)
            covered = coverage_mask(unit, iv, fws, fwset)
        ms, me = _fw_len_maps(unit, fws)
        for a, b in _runs(covered):
            ea, eb = _extend(unit, a, b, ms, me)
            out.append(IslandRecord(t, a, b, ea, eb,
                                    unit[a:b], unit[ea:eb]))
        ix.add_unit(unit)
        if progress is not None:
            progress(t)
    return out


# ------------------------------------------------------------- abstraction

@dataclass
class AbstractCorpus:
    corpus: Corpus                       # the abstract units
    span_maps: list[list[tuple[int, int]]]   # per unit: original island spans
    abs_pos: list[list[tuple[int, int]]]     # per abstract position: original span


def abstract_corpus(corpus: Corpus, islands: list[IslandRecord]) -> AbstractCorpus:
    if any(UNK in u for u in corpus.units):
        raise AbstractionError(
            "reserved placeholder symbol U+FFFF occurs in the corpus")
    per_unit: dict[int, list[tuple[int, int]]] = {}
    for rec in islands:
        per_unit.setdefault(rec.unit, []).append((rec.start, rec.end))
    units = []
    span_maps = []
    abs_pos = []
    for t, unit in enumerate(corpus.units):
        spans = sorted(per_unit.get(t, []))
        parts = []
        posmap: list[tuple[int, int]] = []
        prev = 0
        for a, b in spans:
            for p in range(prev, a):
                posmap.append((p, p + 1))
            parts.append(unit[prev:a])
            parts.append(UNK)
            posmap.append((a, b))
            prev = b
        for p in range(prev, len(unit)):
            posmap.append((p, p + 1))
        parts.append(unit[prev:])
        units.append("".join(parts))
        span_maps.append(spans)
        abs_pos.append(posmap)
    return AbstractCorpus(Corpus(units), span_maps, abs_pos)


def pull_back_span(ab: AbstractCorpus, unit: int, i: int, j: int) -> tuple[int, int]:
    """Original span behind the abstract interval [i, j) of a unit."""
    pm = ab.abs_pos[unit]
    if i >= j:
        p = pm[i][0] if i < len(pm) else (pm[-1][1] if pm else 0)
        return p, p
    return pm[i][0], pm[j - 1][1]


def pull_back(ab: AbstractCorpus, original: Corpus,
              unit: int, i: int, j: int) -> str:
    """Original text behind the abstract interval [i, j) of a unit."""
    oi, oj = pull_back_span(ab, unit, i, j)
    return original.units[unit][oi:oj]
