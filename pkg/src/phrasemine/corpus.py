"""Corpus loading and symbol-level encoding.

A corpus is an ordered list of text units (sentences or paragraphs).
Symbols are Unicode code points; no normalization or tokenization is
applied, so whitespace and punctuation are ordinary symbols.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

UNIT_MODES = ("line", "paragraph")


class CorpusError(ValueError):
    pass


def split_units(text: str, mode: str = "line") -> list[str]:
    """Split raw text into units.

    line mode: one unit per line, empty lines skipped.
    paragraph mode: blocks separated by blank lines; newlines inside a
    block are replaced by single spaces.
    """
    if mode == "line":
        return [ln for ln in text.split("\n") if ln]
    if mode == "paragraph":
        units = []
        for block in text.split("\n\n"):
            unit = " ".join(part for part in block.split("\n") if part)
            if unit:
                units.append(unit)
        return units
    raise CorpusError(f"unknown unit mode: {mode!r} (expected one of {UNIT_MODES})")


@dataclass
class Corpus:
    units: list[str]
    _codes: np.ndarray | None = field(default=None, repr=False, compare=False)
    _offsets: np.ndarray | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_path(cls, path: str | Path, mode: str = "line") -> "Corpus":
        raw = Path(path).read_bytes()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"{path}: not valid UTF-8: {exc}") from None
        units = split_units(text, mode)
        if not units:
            raise CorpusError(f"{path}: no units found")
        return cls(units)

    @classmethod
    def from_units(cls, units: list[str]) -> "Corpus":
        if not units:
            raise CorpusError("corpus has no units")
        if any(not u for u in units):
            raise CorpusError("corpus contains an empty unit")
        return cls(list(units))

    def __len__(self) -> int:
        return len(self.units)

    @property
    def total_symbols(self) -> int:
        return int(self.offsets[-1])

    @property
    def max_unit_len(self) -> int:
        off = self.offsets
        return int((off[1:] - off[:-1]).max())

    def _encode(self) -> None:
        joined = "".join(self.units)
        self._codes = np.frombuffer(joined.encode("utf-32-le"), dtype=np.uint32).astype(np.int32)
        off = np.zeros(len(self.units) + 1, dtype=np.int64)
        np.cumsum([len(u) for u in self.units], out=off[1:])
        self._offsets = off

    @property
    def codes(self) -> np.ndarray:
        """All units concatenated as int32 code points."""
        if self._codes is None:
            self._encode()
        return self._codes

    @property
    def offsets(self) -> np.ndarray:
        """offsets[k]:offsets[k+1] slices unit k out of codes."""
        if self._offsets is None:
            self._encode()
        return self._offsets

    def unit_codes(self, k: int) -> np.ndarray:
        return self.codes[self.offsets[k]:self.offsets[k + 1]]

    def digest(self) -> str:
        h = hashlib.sha256()
        for u in self.units:
            h.update(u.encode("utf-8"))
            h.update(b"\x00")
        return h.hexdigest()
