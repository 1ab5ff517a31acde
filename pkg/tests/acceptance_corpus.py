"""Deterministic natural-English corpus for the acceptance suite.

The acceptance criteria are judged on a desk-scale corpus of roughly 20K
English sentences.  This environment has no network access to fetch a
parliamentary-proceedings excerpt, so the suite assembles a same-scale
substitute: prose sentences harvested from documentation strings of the
Python standard library and installed distributions.  The harvest is
deterministic for a fixed environment (sorted file walk, fixed filters,
fixed shuffle seed) and cached on disk.

Set PHRASEMINE_ACCEPT_CORPUS to a UTF-8 text file (one sentence per line)
to run the suite on a different corpus, e.g. a genuine Europarl excerpt.
Delete the cache directory (/tmp/phrasemine-accept) to force a rebuild.
"""

from __future__ import annotations

import ast
import os
import random
import re
import sys
import sysconfig
from pathlib import Path

BUILDER_VERSION = 4
TARGET_SENTENCES = 20_000
SHUFFLE_SEED = 20260818
CACHE_DIR = Path(os.environ.get("PHRASEMINE_ACCEPT_CACHE",
                                "/tmp/phrasemine-accept"))
CORPUS_PATH = CACHE_DIR / f"corpus-v{BUILDER_VERSION}.txt"

_SENT_SPLIT = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")
_SPACE = re.compile(r"\s+")
# Symbols tolerated in a prose sentence; anything else marks code/markup.
_OK_CHARS = re.compile(r"[A-Za-z0-9 ,.;:!?'\"()‘’“”%-]")
_COMMON = (" the ", " a ", " of ", " to ", " and ", " in ", " is ",
           " that ", " are ", " be ", " for ", " with ")
_SKIP_PREFIXES = (">>>", "...", ":param", ":type", ":return", ":rtype",
                  ":raises", ":meth:", ":class:", ":func:", "Args:",
                  "Returns:", "Raises:", "Examples:", "Example:", "Note:",
                  ".. ", "- ", "* ", "#", "@", "|")


def _paragraphs(doc: str):
    buf: list[str] = []
    for line in doc.splitlines():
        s = line.strip()
        if not s:
            if buf:
                yield " ".join(buf)
                buf = []
            continue
        if s.startswith(_SKIP_PREFIXES) or s.endswith("::"):
            if buf:
                yield " ".join(buf)
                buf = []
            continue
        buf.append(s)
    if buf:
        yield " ".join(buf)


def _is_prose(sent: str) -> bool:
    # Length band chosen to match the register of written proceedings
    # (sentences there average around 150 symbols).
    if not (100 <= len(sent) <= 300):
        return False
    if not sent[0].isupper() or sent[-1] not in ".!?":
        return False
    if len(_OK_CHARS.sub("", sent)) > 0:
        return False
    if sum(c.isdigit() for c in sent) > 2:
        return False
    letters = [c for c in sent if c.isalpha()]
    if not letters or sum(c.islower() for c in letters) / len(letters) < 0.6:
        return False
    words = sent.split()
    if not (10 <= len(words) <= 50):
        return False
    padded = f" {sent} "
    return any(w in padded for w in _COMMON)


def _sentences_of_doc(doc: str):
    for para in _paragraphs(doc):
        para = _SPACE.sub(" ", para).strip()
        for sent in _SENT_SPLIT.split(para):
            sent = sent.strip()
            if _is_prose(sent):
                yield sent


def _docstrings(tree: ast.AST):
    for node in ast.walk(tree):
        if isinstance(node, (ast.Module, ast.ClassDef, ast.FunctionDef,
                             ast.AsyncFunctionDef)):
            doc = ast.get_docstring(node, clean=True)
            if doc:
                yield doc


def _source_roots() -> list[Path]:
    paths = sysconfig.get_paths()
    roots = []
    for key in ("stdlib", "purelib", "platlib"):
        p = Path(paths[key])
        if p.is_dir() and p not in roots:
            roots.append(p)
    return roots


def harvest_sentences() -> list[str]:
    # Duplicates are kept on purpose: natural corpora of proceedings-style
    # prose repeat formulaic sentences, and that repetition carries real
    # distributional signal.
    out: list[str] = []
    for root in _source_roots():
        for path in sorted(root.rglob("*.py")):
            try:
                text = path.read_text(encoding="utf-8", errors="strict")
                tree = ast.parse(text)
            except (OSError, SyntaxError, UnicodeDecodeError, ValueError):
                continue
            for doc in _docstrings(tree):
                out.extend(_sentences_of_doc(doc))
    random.Random(SHUFFLE_SEED).shuffle(out)
    return out[:TARGET_SENTENCES]


def corpus_units() -> list[str]:
    """Sentences of the acceptance corpus, building the cache if needed."""
    override = os.environ.get("PHRASEMINE_ACCEPT_CORPUS")
    if override:
        text = Path(override).read_text(encoding="utf-8")
        return [ln for ln in text.splitlines() if ln.strip()]
    if CORPUS_PATH.is_file():
        return CORPUS_PATH.read_text(encoding="utf-8").splitlines()
    units = harvest_sentences()
    if len(units) < 5000:
        raise RuntimeError(
            f"harvested only {len(units)} sentences; environment too bare "
            f"for the acceptance corpus (set PHRASEMINE_ACCEPT_CORPUS)")
    CACHE_DIR.mkdir(parents=True, exist_ok=True)
    tmp = CORPUS_PATH.with_suffix(".tmp")
    tmp.write_text("\n".join(units) + "\n", encoding="utf-8")
    tmp.replace(CORPUS_PATH)
    return units


if __name__ == "__main__":
    us = corpus_units()
    total = sum(len(u) for u in us)
    print(f"{len(us)} sentences, {total} symbols "
          f"({total / max(len(us), 1):.1f} avg)", file=sys.stderr)
    print(CORPUS_PATH)
