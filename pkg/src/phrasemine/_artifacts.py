"""Shared on-disk layout of a model directory produced by `mine`."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .fwmodel import FittedModel, load_model
from .symindex import FrozenIndex

INDEX_FILE = "index.npz"
MODEL_FILE = "model.npz"
MANIFEST_FILE = "manifest.json"


@dataclass
class Artifacts:
    fz: FrozenIndex
    model: FittedModel
    fw_ids: list[int]
    phrase_ids: list[int]
    fw_texts: list[str]
    digest: str


def load_artifacts(model_dir) -> Artifacts:
    d = Path(model_dir)
    ixp = d / INDEX_FILE
    mp = d / MODEL_FILE
    if not ixp.exists() or not mp.exists():
        raise FileNotFoundError(
            f"{d}: not a model directory (need {INDEX_FILE} and {MODEL_FILE})")
    fz = FrozenIndex.load(ixp)
    model, fw_ids, phrase_ids, meta = load_model(mp)
    if meta["digest"] != fz.digest:
        raise ValueError(f"{d}: model/index digest mismatch")
    fw_texts = [fz.cand_text(c) for c in fw_ids]
    return Artifacts(fz, model, fw_ids, phrase_ids, fw_texts, meta["digest"])
