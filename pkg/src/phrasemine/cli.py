"""Command-line pipeline: build the index, fit the model, and emit every
file-based analysis. Stages persist their results in a model directory so
downstream commands run without re-fitting.
"""

from __future__ import annotations

import json
import os
import time
from pathlib import Path

import click
import numpy as np

from . import __version__, accel, analytics
from ._artifacts import INDEX_FILE, MANIFEST_FILE, MODEL_FILE, Artifacts, load_artifacts
from .analytics import encode_field
from .corpus import Corpus, CorpusError
from .decompose import EPS, bracket_render, canonical_indices, run_dp, unit_table
from .fwmodel import (FitConfig, FitError, fit, save_model,
                      select_function_words, select_phrases)
from .islands import (UNK, abstract_corpus, find_islands, pull_back,
                      pull_back_span)
from .subphrase import MalformedTreeError, SubphraseModel
from .symindex import FrozenIndex, SymbolIndex


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _out_dir(opt: str | None) -> Path:
    out = opt or os.environ.get("PHRASEMINE_OUT")
    if not out:
        raise click.UsageError(
            "no output directory: pass -o/--out or set PHRASEMINE_OUT")
    p = Path(out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _model_dir(opt: str | None) -> Path:
    d = opt or os.environ.get("PHRASEMINE_OUT")
    if not d:
        raise click.UsageError(
            "no model directory: pass --model-dir or set PHRASEMINE_OUT")
    return Path(d)


def _load(model_dir: str | None) -> Artifacts:
    try:
        return load_artifacts(_model_dir(model_dir))
    except (FileNotFoundError, ValueError) as exc:
        raise click.ClickException(str(exc))


def _read_corpus(path: str, unit_mode: str) -> Corpus:
    try:
        return Corpus.from_path(path, mode=unit_mode)
    except (CorpusError, OSError) as exc:
        raise click.ClickException(str(exc))


def _build_index(corpus: Corpus) -> FrozenIndex:
    ix = SymbolIndex(expect_symbols=corpus.total_symbols)
    for u in corpus.units:
        ix.add_unit(u)
    return ix.freeze()


def _write_manifest(outdir: Path, command: str, args: dict,
                    corpus_info: dict | None, outputs: list[str],
                    timings_ms: dict) -> None:
    manifest = {
        "tool": "phrasemine",
        "version": __version__,
        "backend": accel.BACKEND,
        "command": command,
        "args": args,
        "corpus": corpus_info,
        "outputs": sorted(outputs),
        "timings_ms": timings_ms,
    }
    with open(outdir / MANIFEST_FILE, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def _write_rows(path: Path, header: list[str], rows) -> None:
    sep = "," if path.suffix == ".csv" else "\t"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(sep.join(header) + "\n")
        for row in rows:
            fh.write(sep.join(str(c) for c in row) + "\n")


_SUBPHRASE_CACHE: dict[int, SubphraseModel] = {}


def _subphrase_model(art: Artifacts) -> SubphraseModel:
    key = id(art.model)
    sp = _SUBPHRASE_CACHE.get(key)
    if sp is None:
        sp = SubphraseModel(art.fz, art.model, art.fw_ids)
        _SUBPHRASE_CACHE[key] = sp
    return sp


@click.group()
@click.version_option(__version__, prog_name="phrasemine")
def main() -> None:
    """Unsupervised phrase mining over symbol sequences."""


# ------------------------------------------------------------------ index

@main.group()
def index() -> None:
    """Build or inspect a corpus index."""


@index.command("build")
@click.argument("corpus_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", help="output directory (or $PHRASEMINE_OUT)")
@click.option("--unit-mode", type=click.Choice(["line", "paragraph"]),
              default="line", show_default=True)
def index_build(corpus_path: str, out: str | None, unit_mode: str) -> None:
    """Index CORPUS_PATH and write a reusable snapshot."""
    outdir = _out_dir(out)
    corpus = _read_corpus(corpus_path, unit_mode)
    t0 = time.monotonic()
    fz = _build_index(corpus)
    build_ms = int((time.monotonic() - t0) * 1000)
    fz.save(outdir / INDEX_FILE)
    _write_manifest(outdir, "index build",
                    {"unit_mode": unit_mode},
                    {"path": str(corpus_path), "digest": corpus.digest(),
                     "units": len(corpus),
                     "symbols": corpus.total_symbols},
                    [INDEX_FILE], {"index_build": build_ms})
    click.echo(f"indexed {len(corpus)} units, "
               f"{corpus.total_symbols} symbols -> {outdir / INDEX_FILE}")


@index.command("stats")
@click.argument("target", type=click.Path(exists=True))
def index_stats(target: str) -> None:
    """Print size statistics of an index snapshot or model directory."""
    p = Path(target)
    if p.is_dir():
        p = p / INDEX_FILE
    try:
        fz = FrozenIndex.load(p)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    t = fz.candidate_table()
    click.echo(f"units\t{fz.n_units}")
    click.echo(f"symbols\t{fz.total_symbols}")
    click.echo(f"max_unit_len\t{fz.max_unit_len}")
    click.echo(f"states_fwd\t{fz.fwd.length.shape[0]}")
    click.echo(f"states_rev\t{fz.rev.length.shape[0]}")
    click.echo(f"candidates\t{len(t)}")
    click.echo(f"digest\t{fz.digest}")


# ------------------------------------------------------------------- mine

@main.command()
@click.argument("corpus_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", help="output directory (or $PHRASEMINE_OUT)")
@click.option("--theta", type=float, default=1e-6, show_default=True,
              help="convergence slack on the rho trace")
@click.option("--fw-divisor", type=float, default=1000.0, show_default=True,
              help="function words need overlap multiplicity >= units/divisor")
@click.option("--fw-sum", type=float, default=0.4, show_default=True,
              help="minimum boosted prefix+suffix probability")
@click.option("--fw-ratio", type=float, default=4.0, show_default=True,
              help="max boosted prefix/suffix imbalance (exclusive)")
@click.option("--max-passes", type=int, default=100, show_default=True)
@click.option("--unit-mode", type=click.Choice(["line", "paragraph"]),
              default="line", show_default=True)
@click.option("--threads", type=int, default=0,
              help="decomposition threads (0 = all cores)")
@click.option("--quiet", is_flag=True, help="suppress per-pass progress")
def mine(corpus_path: str, out: str | None, theta: float, fw_divisor: float,
         fw_sum: float, fw_ratio: float, max_passes: int, unit_mode: str,
         threads: int, quiet: bool) -> None:
    """Fit the phrase model on CORPUS_PATH and write all model artifacts."""
    outdir = _out_dir(out)
    corpus = _read_corpus(corpus_path, unit_mode)
    nthreads = threads if threads > 0 else (os.cpu_count() or 1)
    config = FitConfig(theta=theta, max_passes=max_passes,
                       fw_divisor=fw_divisor, fw_sum=fw_sum,
                       fw_ratio=fw_ratio, threads=nthreads)
    timings: dict[str, int] = {}

    t0 = time.monotonic()
    fz = _build_index(corpus)
    timings["index_build"] = int((time.monotonic() - t0) * 1000)

    def progress(i: int, rho: float, delta: float) -> None:
        if not quiet:
            click.echo(f"pass {i}: rho={_fmt(rho)} delta={_fmt(delta)}",
                       err=True)

    t0 = time.monotonic()
    try:
        model = fit(fz, config, progress=progress)
    except FitError as exc:
        raise click.ClickException(
            f"fit did not converge in {max_passes} passes; "
            f"rho trace: {[round(r, 6) for r in exc.rho_trace]}")
    timings["fit"] = int((time.monotonic() - t0) * 1000)

    fw_pairs = select_function_words(model, fz, config)
    ph_pairs = select_phrases(model, fz, [t for _, t in fw_pairs])

    fz.save(outdir / INDEX_FILE)
    save_model(outdir / MODEL_FILE, model, [c for c, _ in fw_pairs],
               [c for c, _ in ph_pairs], corpus.digest())

    st, bo = model.stats, model.boost
    _write_rows(outdir / "function-words.tsv",
                ["rank", "text", "fw_multiplicity", "pref", "suff", "inf",
                 "ov", "boosted_prefix", "boosted_suffix", "p_fw"],
                ((r + 1, encode_field(text), int(model.ov_m[cid]),
                  int(st.pref[cid]), int(st.suff[cid]), int(st.inf[cid]),
                  int(st.ov[cid]), _fmt(bo.bp[cid]), _fmt(bo.bs[cid]),
                  _fmt(bo.pfw[cid]))
                 for r, (cid, text) in enumerate(fw_pairs)))
    _write_rows(outdir / "phrases.tsv",
                ["rank", "text", "multiplicity", "occurrences"],
                ((r + 1, encode_field(text), int(model.m[cid]),
                  fz.occ_of(cid))
                 for r, (cid, text) in enumerate(ph_pairs)))
    _write_rows(outdir / "rho-trace.csv", ["iteration", "rho", "delta"],
                ((i + 1, _fmt(r), _fmt(d))
                 for i, (r, d) in enumerate(zip(model.rho_trace,
                                                model.delta_trace))))
    _write_manifest(outdir, "mine",
                    {"theta": theta, "fw_divisor": fw_divisor,
                     "fw_sum": fw_sum, "fw_ratio": fw_ratio,
                     "max_passes": max_passes, "unit_mode": unit_mode,
                     "threads": nthreads},
                    {"path": str(corpus_path), "digest": corpus.digest(),
                     "units": len(corpus),
                     "symbols": corpus.total_symbols},
                    [INDEX_FILE, MODEL_FILE, "function-words.tsv",
                     "phrases.tsv", "rho-trace.csv"], timings)
    click.echo(f"converged after {model.iterations} passes; "
               f"|F(C)|={len(fw_pairs)} |P(C)|={len(ph_pairs)} -> {outdir}")


# -------------------------------------------------------------- decompose

@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("--unit", "unit_no", type=int, default=None,
              help="decompose only this unit number (0-based)")
@click.option("--text", default=None, help="decompose this text instead")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
              help="output file (default: stdout)")
def decompose(model_dir: str | None, unit_no: int | None, text: str | None,
              out: str | None) -> None:
    """Optimal overlapping decompositions under the fitted model."""
    art = _load(model_dir)
    fz, model = art.fz, art.model
    table = fz.candidate_table()
    allowed = np.ones(len(table), np.uint8)
    rows: list[tuple] = []

    def one(label, t, raw_text):
        dp = run_dp(t, model.boost.logp, allowed, EPS, mark=False)
        if dp.has_path:
            ci = canonical_indices(t, dp, model.boost.logp, allowed, EPS)
            spans = [(int(t.ii[v]), int(t.jj[v])) for v in ci]
            overlaps = [(spans[k + 1][0], spans[k][1])
                        for k in range(len(spans) - 1)]
            best = _fmt(dp.best)
        else:
            spans, overlaps, best = [(0, t.L)], [], ""
        rows.append((label, best,
                     " ".join(f"{a}-{b}" for a, b in spans),
                     " ".join(f"{a}-{b}" for a, b in overlaps),
                     encode_field(bracket_render(raw_text, spans))))

    if text is not None:
        one("text", unit_table(fz, table, text=text), text)
    elif unit_no is not None:
        if not 0 <= unit_no < fz.n_units:
            raise click.ClickException(
                f"unit {unit_no} out of range (0..{fz.n_units - 1})")
        one(unit_no, unit_table(fz, table, unit=unit_no), fz.units[unit_no])
    else:
        for k in range(fz.n_units):
            one(k, unit_table(fz, table, unit=k), fz.units[k])

    header = ["unit", "best", "intervals", "overlaps", "rendered"]
    if out:
        _write_rows(Path(out), header, rows)
    else:
        click.echo("\t".join(header))
        for row in rows:
            click.echo("\t".join(str(c) for c in row))


# -------------------------------------------------------------- subphrase

def _dump_tree(sp: SubphraseModel, cid: int, depth: int, lines: list[str]) -> None:
    text = sp.fz.cand_text(cid)
    kern = sp.kernel_text(cid)
    lines.append("  " * depth + f"{encode_field(text)}\t"
                 f"kernel={encode_field(kern)}")
    ch = sp.children(cid)
    if ch:
        for _off, sub in ch:
            _dump_tree(sp, sub, depth + 1, lines)


@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("--phrase", default=None, help="a single phrase text")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def subphrase(model_dir: str | None, phrase: str | None,
              out: str | None) -> None:
    """Decomposition trees of phrases over the function-word inventory."""
    art = _load(model_dir)
    sp = _subphrase_model(art)
    if phrase is not None:
        cid = art.fz.cand_id(phrase)
        if cid < 0:
            raise click.ClickException(
                f"{phrase!r} is not a phrase candidate of this corpus")
        ids = [cid]
    else:
        ids = art.phrase_ids
    lines: list[str] = []
    for cid in ids:
        _dump_tree(sp, cid, 0, lines)
    body = "\n".join(lines) + ("\n" if lines else "")
    if out:
        Path(out).write_text(body, encoding="utf-8")
    else:
        click.echo(body, nl=False)


# ---------------------------------------------------------------- schemes

@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("--instances", type=int, default=1, show_default=True,
              help="sample instances per scheme")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def schemes(model_dir: str | None, instances: int, out: str | None) -> None:
    """Functional schemes of the phrase multiset, ordered by multiplicity."""
    art = _load(model_dir)
    sp = _subphrase_model(art)
    acc: dict[str, list] = {}
    malformed = 0
    for cid in art.phrase_ids:
        try:
            rec = sp.scheme(cid)
        except MalformedTreeError:
            malformed += 1
            continue
        row = acc.setdefault(rec.scheme, [0, len(rec.kernels), []])
        row[0] += int(art.model.m[cid])
        if len(row[2]) < instances:
            row[2].append(art.fz.cand_text(cid))
    ordered = sorted(acc.items(), key=lambda kv: (-kv[1][0], kv[0]))
    rows = [(encode_field(s), c, n,
             " ; ".join(encode_field(x) for x in inst))
            for s, (c, n, inst) in ordered]
    header = ["scheme", "count", "kernels", "instances"]
    if out:
        _write_rows(Path(out), header, rows)
    else:
        click.echo("\t".join(header))
        for row in rows:
            click.echo("\t".join(str(c) for c in row))
    if malformed:
        click.echo(f"skipped {malformed} phrases with out-of-order kernel "
                   f"spans", err=True)


# ---------------------------------------------------------------- islands

@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("-o", "--out", help="output directory (default: model dir)")
@click.option("--instances", type=int, default=3, show_default=True,
              help="instances per island scheme")
@click.option("--quiet", is_flag=True)
def islands(model_dir: str | None, out: str | None, instances: int,
            quiet: bool) -> None:
    """Novelty islands per unit, plus island schemes via abstraction."""
    art = _load(model_dir)
    outdir = Path(out) if out else _model_dir(model_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    corpus = Corpus(art.fz.units)
    fws = [f for f in art.fw_texts if f]

    recs = find_islands(corpus, fws)
    _write_rows(outdir / "islands.tsv",
                ["unit", "start", "end", "core", "ext_start", "ext_end",
                 "extended"],
                ((r.unit, r.start, r.end, encode_field(r.text),
                  r.ext_start, r.ext_end, encode_field(r.ext_text))
                 for r in recs))

    ab = abstract_corpus(corpus, recs)
    if not quiet:
        click.echo(f"{len(recs)} islands; refitting on the abstract corpus",
                   err=True)
    afz = _build_index(ab.corpus)
    try:
        amodel = fit(afz, art.model.config)
    except FitError as exc:
        raise click.ClickException(
            f"abstract-corpus fit did not converge; rho trace "
            f"{[round(r, 6) for r in exc.rho_trace]}")
    afw = select_function_words(amodel, afz, art.model.config)
    aph = select_phrases(amodel, afz, [t for _, t in afw])
    rows = []
    for cid, text in aph:
        if UNK not in text:
            continue
        shown = text.replace(UNK, "UNK")
        occs, _total = afz.occurrences(text, limit=instances)
        for u, i, j in occs:
            oi, oj = pull_back_span(ab, u, i, j)
            rows.append((encode_field(shown), int(amodel.m[cid]),
                         encode_field(pull_back(ab, corpus, u, i, j)),
                         u, oi, oj))
    _write_rows(outdir / "island-schemes.tsv",
                ["scheme", "count", "instance", "unit", "start", "end"], rows)
    click.echo(f"wrote {outdir / 'islands.tsv'} and "
               f"{outdir / 'island-schemes.tsv'}")


# --------------------------------------------------------------- keywords

def _ranking(art: Artifacts) -> list[analytics.KernelRank]:
    sp = _subphrase_model(art)
    return analytics.kernel_ranking(sp, art.phrase_ids)


@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def keywords(model_dir: str | None, out: str | None) -> None:
    """Characteristic atomic kernels ranked by phrase significance."""
    ranking = _ranking(_load(model_dir))
    rows = [(encode_field(r.kernel), r.score, r.rank) for r in ranking]
    header = ["kernel", "score", "rank"]
    if out:
        _write_rows(Path(out), header, rows)
    else:
        click.echo("\t".join(header))
        for row in rows:
            click.echo("\t".join(str(c) for c in row))


@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("--compare", "compares", multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="kernel ranking TSV of a comparison corpus (repeatable)")
@click.option("--rank-cut", type=int, default=1000, show_default=True,
              help="drop kernels ranked above this cut in any comparison")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def terms(model_dir: str | None, compares: tuple[str, ...], rank_cut: int,
          out: str | None) -> None:
    """Terminological kernels: keywords absent from comparison corpora."""
    ranking = _ranking(_load(model_dir))
    try:
        cmps = [analytics.load_ranking_tsv(p) for p in compares]
    except ValueError as exc:
        raise click.ClickException(str(exc))
    kept = analytics.terminological_filter(ranking, cmps, rank_cut)
    rows = [(encode_field(r.kernel), r.score, r.rank) for r in kept]
    header = ["kernel", "score", "rank"]
    if out:
        _write_rows(Path(out), header, rows)
    else:
        click.echo("\t".join(header))
        for row in rows:
            click.echo("\t".join(str(c) for c in row))


# ----------------------------------------------------------------- expand

@main.command()
@click.argument("kernel")
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("--limit", type=int, default=20, show_default=True)
def expand(kernel: str, model_dir: str | None, limit: int) -> None:
    """Ranked kernel expansions: phrases containing KERNEL, trimmed of
    function-word borders."""
    art = _load(model_dir)
    res = analytics.kernel_expansion(art.fz, art.phrase_ids, art.fw_texts,
                                     kernel, limit=limit)
    for e in res:
        click.echo(f"{encode_field(e.text)}\t{e.occ}")


# ---------------------------------------------------------------- network

@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("--seed", default=None, help="keep edges touching this word")
@click.option("-o", "--out", help="output directory (default: model dir)")
def network(model_dir: str | None, seed: str | None, out: str | None) -> None:
    """Atom co-occurrence network over phrases (edge list + GML)."""
    art = _load(model_dir)
    sp = _subphrase_model(art)
    edges = analytics.cooccurrence_edges(sp, art.phrase_ids)
    if seed:
        edges = analytics.seed_edges(sp, edges, seed)
    outdir = Path(out) if out else _model_dir(model_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_rows(outdir / "network-edges.tsv",
                ["atom1", "atom2", "phrase", "weight"],
                ((encode_field(art.fz.cand_text(e.a)),
                  encode_field(art.fz.cand_text(e.b)),
                  encode_field(art.fz.cand_text(e.phrase)), e.occ)
                 for e in edges))
    (outdir / "network.gml").write_text(
        analytics.network_gml(sp, edges) + "\n", encoding="utf-8")
    click.echo(f"wrote {outdir / 'network-edges.tsv'} and "
               f"{outdir / 'network.gml'} ({len(edges)} edges)")


# ------------------------------------------------------------------ stats

@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def stats(model_dir: str | None, out: str | None) -> None:
    """Phrase-length statistics of the fitted multiset."""
    art = _load(model_dir)
    rows_ls = analytics.length_stats(art.fz, art.model, art.phrase_ids)
    rows = [(r.words, r.variety, r.multiplicity, r.occurrences,
             _fmt(r.ratio)) for r in rows_ls]
    header = ["words", "variety", "multiplicity", "occurrences", "ratio"]
    if out:
        _write_rows(Path(out), header, rows)
    else:
        click.echo(",".join(header))
        for row in rows:
            click.echo(",".join(str(c) for c in row))
    window = [(r.words, r.ratio) for r in rows_ls if 1 <= r.words <= 10]
    if len(window) >= 3:
        rho = analytics.spearman([w for w, _ in window],
                                 [x for _, x in window])
        click.echo(f"spearman(words, multiplicity/occurrences) over "
                   f"w=1..10: {_fmt(rho)}", err=True)


# ------------------------------------------------------------------ serve

@main.command()
@click.option("--model-dir", help="model directory (or $PHRASEMINE_OUT)")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8571, show_default=True)
def serve(model_dir: str | None, host: str, port: int) -> None:
    """Serve expansion, concordance, and stats over HTTP."""
    import uvicorn

    from .service import create_app

    app = create_app(_model_dir(model_dir))
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
