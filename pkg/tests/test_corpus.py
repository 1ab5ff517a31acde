import numpy as np
import pytest

from phrasemine.corpus import Corpus, CorpusError, split_units


def test_split_line_mode():
    assert split_units("a\nb\n\nc\n") == ["a", "b", "c"]
    assert split_units("single") == ["single"]
    assert split_units("") == []


def test_split_paragraph_mode():
    text = "first line\nsame block\n\nsecond block\n\n\nthird"
    assert split_units(text, "paragraph") == [
        "first line same block", "second block", "third"]


def test_split_unknown_mode():
    with pytest.raises(CorpusError):
        split_units("x", "word")


def test_from_units_rejects_empty():
    with pytest.raises(CorpusError):
        Corpus.from_units([])
    with pytest.raises(CorpusError):
        Corpus.from_units(["ok", ""])


def test_from_path_roundtrip(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("ab\ncd\n", encoding="utf-8")
    c = Corpus.from_path(p)
    assert c.units == ["ab", "cd"]
    assert len(c) == 2
    assert c.total_symbols == 4
    assert c.max_unit_len == 2


def test_from_path_rejects_non_utf8(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_bytes(b"\xff\xfe\x00ab")
    with pytest.raises(CorpusError):
        Corpus.from_path(p)


def test_codes_and_offsets():
    c = Corpus.from_units(["ab", "xyz"])
    assert c.codes.tolist() == [ord(ch) for ch in "abxyz"]
    assert c.offsets.tolist() == [0, 2, 5]
    assert c.unit_codes(1).tolist() == [ord(ch) for ch in "xyz"]
    assert c.unit_codes(1).dtype == np.int32


def test_codes_cover_non_bmp():
    c = Corpus.from_units(["a\U0001F600b"])
    assert c.codes.tolist() == [ord("a"), 0x1F600, ord("b")]
    assert c.total_symbols == 3


def test_digest_is_content_addressed():
    a = Corpus.from_units(["ab", "cd"])
    b = Corpus.from_units(["ab", "cd"])
    assert a.digest() == b.digest()
    # unit boundaries matter, not just the concatenation
    assert a.digest() != Corpus.from_units(["abcd"]).digest()
    assert a.digest() != Corpus.from_units(["ab", "ce"]).digest()
