"""Function-word model: iterative refitting of the phrase multiset.

Pass i computes boundary statistics of the current multiset P_i, turns them
into boosted prefix/suffix probabilities, and re-decomposes the corpus to
produce P_{i+1} plus the overlap multiset. The loop halts at the first i>0
where rho(P_i, P_{i+1}) >= rho(P_{i-1}, P_i) - theta; the fitted model is
the pass-i snapshot.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import accel
from .decompose import collect_pass
from .symindex import FrozenIndex

MODEL_MAGIC = "phrasemine-model"
MODEL_VERSION = 1


@dataclass
class FitConfig:
    theta: float = 1e-6
    max_passes: int = 100
    eps: float = 1e-9
    fw_divisor: float = 1000.0
    fw_sum: float = 0.4
    fw_ratio: float = 4.0
    threads: int = 1


@dataclass
class PassStats:
    pref: np.ndarray
    suff: np.ndarray
    inf: np.ndarray
    ov: np.ndarray


@dataclass
class BoostedProbs:
    p_pref: np.ndarray
    p_suf: np.ndarray
    bp: np.ndarray      # boosted prefix probability
    bs: np.ndarray      # boosted suffix probability
    pfw: np.ndarray     # bp * bs
    logp: np.ndarray    # log pfw, floored for zero probability
    violations: int     # count of bp + bs > 1


@dataclass
class FittedModel:
    m: np.ndarray            # phrase multiset P_n over candidate ids
    ov_m: np.ndarray         # overlap multiset F(P_n)
    stats: PassStats
    boost: BoostedProbs
    iterations: int
    rho_trace: list[float]
    delta_trace: list[float]
    violations: list[int]
    config: FitConfig = field(default_factory=FitConfig)


class FitError(RuntimeError):
    def __init__(self, msg: str, rho_trace: list[float]):
        super().__init__(msg)
        self.rho_trace = rho_trace


def compute_stats(fz: FrozenIndex, m: np.ndarray) -> PassStats:
    t = fz.candidate_table()
    nc = len(t)
    pref = np.zeros(nc, np.int64)
    suff = np.zeros(nc, np.int64)
    inf = np.zeros(nc, np.int64)
    ov = np.zeros(nc, np.int64)
    f, r = fz.fwd, fz.rev
    accel.stats_pass(
        m, t.fstate, t.length, t.pad, t.keys, fz.codes,
        np.asarray(fz.offsets, np.int64),
        f.tstart, f.tsym, f.tdst, f.length, f.minlen, f.link, f.rok_next,
        f.first_unit, f.first_end,
        r.tstart, r.tsym, r.tdst, r.length, r.minlen, r.link, r.rok_next,
        pref, suff, inf, ov)
    return PassStats(pref, suff, inf, ov)


def boosted_probs(st: PassStats) -> BoostedProbs:
    inf = st.inf.astype(np.float64)
    nz = st.inf > 0
    pp = np.zeros_like(inf)
    ps = np.zeros_like(inf)
    np.divide(st.pref, inf, out=pp, where=nz)
    np.divide(st.suff, inf, out=ps, where=nz)
    o = np.zeros_like(inf)
    np.divide(st.ov, inf, out=o, where=nz)
    s = pp + ps
    boost = np.zeros_like(inf)
    np.divide(o, s, out=boost, where=s > 0)
    bp = pp + pp * boost
    bs = ps + ps * boost
    pfw = bp * bs
    logp = np.full_like(inf, accel.LOG_FLOOR)
    pos = pfw > 0
    logp[pos] = np.log(pfw[pos])
    violations = int(np.sum(bp + bs > 1.0 + 1e-12))
    return BoostedProbs(pp, ps, bp, bs, pfw, logp, violations)


def rho_arrays(a: np.ndarray, b: np.ndarray) -> float:
    den = float(np.maximum(a, b).sum())
    if den == 0:
        return 0.0
    return float(np.abs(a - b).sum()) / den


def delta_arrays(a: np.ndarray, b: np.ndarray) -> float:
    den = float(np.maximum(a, b).sum())
    if den == 0:
        return 0.0
    return float((a - b).sum()) / den


def fit(fz: FrozenIndex, config: FitConfig | None = None,
        progress=None) -> FittedModel:
    config = config or FitConfig()
    table = fz.candidate_table()
    m = table.occ.copy()
    m[0] = 0                       # the empty string is not a phrase
    allowed = np.ones(len(table), np.uint8)
    rho_trace: list[float] = []
    delta_trace: list[float] = []
    viol: list[int] = []
    prev_r = None
    i = 0
    while True:
        st = compute_stats(fz, m)
        bp = boosted_probs(st)
        pm, om = collect_pass(fz, table, bp.logp, allowed, config.eps,
                              config.threads)
        r = rho_arrays(m, pm)
        d = delta_arrays(m, pm)
        rho_trace.append(r)
        delta_trace.append(d)
        viol.append(bp.violations)
        if progress is not None:
            progress(i, r, d)
        if i > 0 and r >= prev_r - config.theta:
            return FittedModel(m, om, st, bp, i, rho_trace, delta_trace,
                               viol, config)
        if i + 1 >= config.max_passes:
            raise FitError(
                f"no convergence within {config.max_passes} passes; "
                f"rho trace: {rho_trace}", rho_trace)
        prev_r = r
        m = pm
        i += 1


# ---------------------------------------------------------------------------
# selection of function words and phrases from the fitted model
# ---------------------------------------------------------------------------

def select_function_words(model: FittedModel, fz: FrozenIndex,
                          config: FitConfig | None = None) -> list[tuple[int, str]]:
    """Function words: frequent overlaps that are both typical prefixes and
    typical suffixes. Ranked by overlap multiplicity, ties lexicographic."""
    config = config or model.config
    ov = model.ov_m
    bp, bs = model.boost.bp, model.boost.bs
    thr = fz.n_units / config.fw_divisor
    mask = (ov >= thr) & ((bp + bs) > config.fw_sum) & (bp > 0) & (bs > 0)
    ids = np.flatnonzero(mask)
    keep = []
    for cid in ids:
        q = bp[cid] / bs[cid]
        if 1.0 / config.fw_ratio < q < config.fw_ratio:
            keep.append(int(cid))
    texts = {cid: fz.cand_text(cid) for cid in keep}
    keep.sort(key=lambda cid: (-int(ov[cid]), texts[cid]))
    return [(cid, texts[cid]) for cid in keep]


def select_phrases(model: FittedModel, fz: FrozenIndex,
                   fw_texts: list[str]) -> list[tuple[int, str]]:
    """Phrases of the final multiset that start and end at a function word
    or a unit border. Ranked by multiplicity, ties lexicographic."""
    fwt = tuple(f for f in fw_texts if f)
    has_eps = "" in fw_texts
    t = fz.candidate_table()
    out = []
    for cid in np.flatnonzero(model.m > 0):
        cid = int(cid)
        if cid == 0:
            continue
        text = fz.cand_text(cid)
        sp = has_eps or bool(t.unit_prefix[cid]) or (bool(fwt) and text.startswith(fwt))
        if not sp:
            continue
        ep = has_eps or bool(t.unit_suffix[cid]) or (bool(fwt) and text.endswith(fwt))
        if ep:
            out.append((cid, text))
    out.sort(key=lambda r: (-int(model.m[r[0]]), r[1]))
    return out


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

def save_model(path, model: FittedModel, fw_ids: list[int],
               phrase_ids: list[int], digest: str) -> None:
    meta = {
        "magic": MODEL_MAGIC,
        "version": MODEL_VERSION,
        "iterations": model.iterations,
        "rho_trace": model.rho_trace,
        "delta_trace": model.delta_trace,
        "violations": model.violations,
        "config": asdict(model.config),
        "digest": digest,
    }
    np.savez_compressed(
        path,
        __meta__=np.frombuffer(json.dumps(meta).encode(), np.uint8),
        m=model.m, ov_m=model.ov_m,
        pref=model.stats.pref, suff=model.stats.suff,
        inf=model.stats.inf, ov=model.stats.ov,
        p_pref=model.boost.p_pref, p_suf=model.boost.p_suf,
        bp=model.boost.bp, bs=model.boost.bs,
        pfw=model.boost.pfw, logp=model.boost.logp,
        fw_ids=np.asarray(fw_ids, np.int64),
        phrase_ids=np.asarray(phrase_ids, np.int64))


def load_model(path) -> tuple[FittedModel, list[int], list[int], dict]:
    with np.load(path) as z:
        try:
            meta = json.loads(bytes(z["__meta__"]))
        except KeyError:
            raise ValueError(f"{path}: not a model file") from None
        if meta.get("magic") != MODEL_MAGIC:
            raise ValueError(f"{path}: bad model magic")
        if meta.get("version") != MODEL_VERSION:
            raise ValueError(f"{path}: unsupported model version")
        st = PassStats(z["pref"], z["suff"], z["inf"], z["ov"])
        bo = BoostedProbs(z["p_pref"], z["p_suf"], z["bp"], z["bs"],
                          z["pfw"], z["logp"],
                          int(meta["violations"][-1]) if meta["violations"] else 0)
        model = FittedModel(z["m"], z["ov_m"], st, bo, meta["iterations"],
                            meta["rho_trace"], meta["delta_trace"],
                            meta["violations"], FitConfig(**meta["config"]))
        return (model, [int(c) for c in z["fw_ids"]],
                [int(c) for c in z["phrase_ids"]], meta)
