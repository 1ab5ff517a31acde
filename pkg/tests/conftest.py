"""Shared fixtures: a small deterministic template corpus whose fitted model
is reused (session-scoped) by the unit tests, plus a CLI-produced model
directory for the command and service tests."""

import random

import pytest

from phrasemine import fwmodel
from phrasemine.corpus import Corpus
from phrasemine.subphrase import SubphraseModel
from phrasemine.symindex import SymbolIndex


def make_toy_units(seed: int = 7, n: int = 240) -> list[str]:
    rng = random.Random(seed)
    det = ["the", "a"]
    nouns = ["cat", "dog", "law", "rule", "day", "park", "mat",
             "garden", "tool", "plan"]
    verbs = ["sat", "stood", "ran", "slept"]
    preps = ["on", "in", "near", "under"]
    units = []
    for _ in range(n):
        d1, d2, d3 = (rng.choice(det) for _ in range(3))
        n1, n2, n3 = (rng.choice(nouns) for _ in range(3))
        v = rng.choice(verbs)
        p1, p2 = rng.choice(preps), rng.choice(preps)
        units.append(f"{d1} {n1} {v} {p1} {d2} {n2} {p2} {d3} {n3}.")
    return units


@pytest.fixture(scope="session")
def toy_units():
    return make_toy_units()


@pytest.fixture(scope="session")
def toy_fz(toy_units):
    return SymbolIndex.from_corpus(Corpus.from_units(toy_units)).freeze()


@pytest.fixture(scope="session")
def toy_model(toy_fz):
    return fwmodel.fit(toy_fz)


@pytest.fixture(scope="session")
def toy_fw(toy_model, toy_fz):
    return fwmodel.select_function_words(toy_model, toy_fz)


@pytest.fixture(scope="session")
def toy_phrases(toy_model, toy_fz, toy_fw):
    return fwmodel.select_phrases(toy_model, toy_fz, [t for _, t in toy_fw])


@pytest.fixture(scope="session")
def toy_sp(toy_fz, toy_model, toy_fw):
    return SubphraseModel(toy_fz, toy_model, [c for c, _ in toy_fw])


@pytest.fixture(scope="session")
def toy_corpus_file(tmp_path_factory, toy_units):
    p = tmp_path_factory.mktemp("corpus") / "toy.txt"
    p.write_text("\n".join(toy_units) + "\n", encoding="utf-8")
    return p


@pytest.fixture(scope="session")
def toy_model_dir(tmp_path_factory, toy_corpus_file):
    """Model directory produced by the real `mine` command."""
    from click.testing import CliRunner

    from phrasemine.cli import main

    out = tmp_path_factory.mktemp("model")
    r = CliRunner().invoke(
        main, ["mine", str(toy_corpus_file), "-o", str(out), "--quiet"])
    assert r.exit_code == 0, r.output
    return out
