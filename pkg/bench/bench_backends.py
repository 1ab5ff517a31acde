#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-numpy fallback.

The backend is selected at import time via PHRASEMINE_BACKEND, so each
variant runs the full pipeline (index build + model fit) in its own
subprocess on the same generated corpus. Wall times come from the
manifest the pipeline writes; the script also verifies that both
backends produce byte-identical artifacts.

Usage: python bench/bench_backends.py [--units N] [--seed S] [--keep]
"""

from __future__ import annotations

import argparse
import json
import random
import shutil
import subprocess
import sys
import tempfile
import time
from pathlib import Path

DETS = ["the", "a"]
NOUNS = ["cat", "dog", "law", "rule", "day", "park", "mat", "garden",
         "tool", "plan", "fair", "house", "court", "paper"]
VERBS = ["sat", "stood", "ran", "slept", "stayed"]
PREPS = ["on", "in", "near", "under", "beside"]


def gen_units(n: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        d1, d2, d3 = (rng.choice(DETS) for _ in range(3))
        n1, n2, n3 = (rng.choice(NOUNS) for _ in range(3))
        v = rng.choice(VERBS)
        p1, p2 = rng.choice(PREPS), rng.choice(PREPS)
        out.append(f"{d1} {n1} {v} {p1} {d2} {n2} {p2} {d3} {n3}.")
    return out


def run_once(backend: str, corpus: Path, outdir: Path) -> dict:
    env = dict(**__import__("os").environ)
    env["PHRASEMINE_BACKEND"] = backend
    t0 = time.monotonic()
    r = subprocess.run(
        [sys.executable, "-m", "phrasemine.cli", "mine", str(corpus),
         "-o", str(outdir), "--quiet", "--threads", "1"],
        env=env, capture_output=True, text=True)
    wall = time.monotonic() - t0
    if r.returncode != 0:
        sys.exit(f"{backend} run failed:\n{r.stderr}")
    man = json.loads((outdir / "manifest.json").read_text())
    return {"backend": man["backend"], "wall_s": wall,
            "index_ms": man["timings_ms"]["index_build"],
            "fit_ms": man["timings_ms"]["fit"]}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--units", type=int, default=800,
                    help="corpus size in sentences (default 800)")
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--keep", action="store_true",
                    help="keep the work directory")
    args = ap.parse_args()

    work = Path(tempfile.mkdtemp(prefix="phrasemine-bench-"))
    corpus = work / "corpus.txt"
    corpus.write_text("\n".join(gen_units(args.units, args.seed)) + "\n",
                      encoding="utf-8")
    size = corpus.stat().st_size
    print(f"corpus: {args.units} units, {size} bytes -> {work}")

    rows = []
    for backend in ("numba", "numpy"):
        out = work / backend
        res = run_once(backend, corpus, out)
        rows.append(res)
        print(f"{backend:>6}: wall {res['wall_s']:7.2f}s   "
              f"index {res['index_ms']:6d}ms   fit {res['fit_ms']:6d}ms")

    same = all(
        (work / "numba" / f).read_bytes() == (work / "numpy" / f).read_bytes()
        for f in ("function-words.tsv", "phrases.tsv", "rho-trace.csv",
                  "index.npz", "model.npz"))
    print(f"artifacts byte-identical: {same}")

    fit_ratio = rows[1]["fit_ms"] / max(rows[0]["fit_ms"], 1)
    print(f"fit speedup (numba vs numpy): {fit_ratio:.1f}x")
    if not args.keep:
        shutil.rmtree(work)
    if not same:
        sys.exit("backend outputs differ")


if __name__ == "__main__":
    main()
