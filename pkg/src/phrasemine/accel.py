"""Kernel layer: numba-compiled primitives with a pure-Python fallback.

The backend is chosen once at import time. PHRASEMINE_BACKEND=numpy forces
the fallback; any other value (or unset) uses numba when importable. Both
paths execute the same function bodies, so results are identical and only
speed differs.

Data conventions shared by all kernels:
  * transition maps are flat dicts keyed state * KPAD + symbol
  * interval keys inside one unit of length L are start * (L + 1) + end
  * candidate identity is (forward state, length), packed as
    state * pad + length with pad > max unit length
"""

from __future__ import annotations

import os

import numpy as np

_requested = os.environ.get("PHRASEMINE_BACKEND", "").strip().lower()
_nb = None
if _requested != "numpy":
    try:
        import numba as _nb
    except ImportError:
        _nb = None

BACKEND = "numba" if _nb is not None else "numpy"

KPAD = np.int64(0x110001)   # one slot past the largest Unicode scalar
NEG = -1.0e18               # score sentinel: below any admissible path score
LOG_FLOOR = -1.0e9          # stands in for log(0) so paths stay comparable


def _jit(fn=None, *, cache=True, nogil=True):
    if _nb is None:
        if fn is None:
            return lambda f: f
        return fn
    deco = _nb.njit(cache=cache, nogil=nogil, fastmath=False)
    if fn is None:
        return deco
    return deco(fn)


def new_transition_dict():
    if _nb is None:
        return {}
    from numba import types
    from numba.typed import Dict

    return Dict.empty(types.int64, types.int64)


# ---------------------------------------------------------------------------
# generalized suffix automaton, online construction over a flat dict
# ---------------------------------------------------------------------------

@_jit(cache=False)
def _dget(trans, k):
    if k in trans:
        return trans[k]
    return np.int64(-1)


@_jit(cache=False)
def sam_add_unit(codes, lo, hi, unit_id, trans, length, link, term, cnt,
                 outdeg, first_unit, first_end, ehead, enext, esym,
                 n_states, n_edges, ev_state, record_ev):
    """Insert one unit (codes[lo:hi]) into the automaton. Returns the new
    (n_states, n_edges); n_states == -1 signals edge-buffer overflow and the
    structure must be rebuilt with more capacity."""
    ecap = esym.shape[0]
    last = np.int64(0)
    for pos in range(lo, hi):
        c = np.int64(codes[pos])
        end_off = np.int32(pos - lo + 1)
        nxt = _dget(trans, last * KPAD + c)
        if nxt >= 0:
            q = nxt
            if length[q] == length[last] + 1:
                last = q
            else:
                clone = n_states
                n_states += 1
                length[clone] = length[last] + 1
                link[clone] = link[q]
                term[clone] = term[q]
                cnt[clone] = 0
                outdeg[clone] = outdeg[q]
                ehead[clone] = -1
                first_unit[clone] = first_unit[q]
                first_end[clone] = first_end[q]
                e = ehead[q]
                while e >= 0:
                    s = np.int64(esym[e])
                    if n_edges >= ecap:
                        return np.int64(-1), np.int64(-1)
                    trans[clone * KPAD + s] = trans[q * KPAD + s]
                    esym[n_edges] = np.int32(s)
                    enext[n_edges] = ehead[clone]
                    ehead[clone] = n_edges
                    n_edges += 1
                    e = enext[e]
                p = last
                while p >= 0 and _dget(trans, p * KPAD + c) == q:
                    trans[p * KPAD + c] = clone
                    p = link[p]
                link[q] = clone
                last = clone
        else:
            cur = n_states
            n_states += 1
            length[cur] = length[last] + 1
            link[cur] = 0
            term[cur] = 0
            cnt[cur] = 0
            outdeg[cur] = 0
            ehead[cur] = -1
            first_unit[cur] = unit_id
            first_end[cur] = end_off
            p = last
            while p >= 0 and _dget(trans, p * KPAD + c) < 0:
                if n_edges >= ecap:
                    return np.int64(-1), np.int64(-1)
                trans[p * KPAD + c] = cur
                esym[n_edges] = np.int32(c)
                enext[n_edges] = ehead[p]
                ehead[p] = n_edges
                n_edges += 1
                outdeg[p] += 1
                p = link[p]
            if p < 0:
                link[cur] = 0
            else:
                q = trans[p * KPAD + c]
                if length[q] == length[p] + 1:
                    link[cur] = q
                else:
                    clone = n_states
                    n_states += 1
                    length[clone] = length[p] + 1
                    link[clone] = link[q]
                    term[clone] = term[q]
                    cnt[clone] = 0
                    outdeg[clone] = outdeg[q]
                    ehead[clone] = -1
                    first_unit[clone] = first_unit[q]
                    first_end[clone] = first_end[q]
                    e = ehead[q]
                    while e >= 0:
                        s = np.int64(esym[e])
                        if n_edges >= ecap:
                            return np.int64(-1), np.int64(-1)
                        trans[clone * KPAD + s] = trans[q * KPAD + s]
                        esym[n_edges] = np.int32(s)
                        enext[n_edges] = ehead[clone]
                        ehead[clone] = n_edges
                        n_edges += 1
                        e = enext[e]
                    pp = p
                    while pp >= 0 and _dget(trans, pp * KPAD + c) == q:
                        trans[pp * KPAD + c] = clone
                        pp = link[pp]
                    link[q] = clone
                    link[cur] = clone
            last = cur
        cnt[last] += 1
        if record_ev:
            ev_state[pos] = np.int32(last)
    p = last
    while p >= 0 and term[p] == 0:
        term[p] = 1
        p = link[p]
    return n_states, n_edges


@_jit(cache=False)
def dict_dump(trans, keys, vals):
    i = 0
    for k, v in trans.items():
        keys[i] = k
        vals[i] = v
        i += 1
    return i


@_jit
def propagate_counts(order_len_asc, link, cnt):
    """endpos sizes: fold each state's count into its suffix link, deepest
    first."""
    for idx in range(order_len_asc.shape[0] - 1, -1, -1):
        v = order_len_asc[idx]
        p = link[v]
        if p >= 0:
            cnt[p] += cnt[v]


@_jit
def fill_rok_next(order_len_asc, link, rok, out):
    for idx in range(order_len_asc.shape[0]):
        v = order_len_asc[idx]
        if rok[v]:
            out[v] = v
        elif link[v] >= 0:
            out[v] = out[link[v]]
        else:
            out[v] = -1


@_jit
def euler_order(cstart, clist, euler_in, euler_out):
    n = euler_in.shape[0]
    stack = np.empty(n + 1, np.int64)
    iptr = np.empty(n + 1, np.int64)
    top = 0
    stack[0] = 0
    iptr[0] = cstart[0]
    t = np.int64(0)
    euler_in[0] = t
    t += 1
    while top >= 0:
        v = stack[top]
        if iptr[top] < cstart[v + 1]:
            ch = clist[iptr[top]]
            iptr[top] += 1
            top += 1
            stack[top] = ch
            iptr[top] = cstart[ch]
            euler_in[ch] = t
            t += 1
        else:
            euler_out[v] = t
            top -= 1


# ---------------------------------------------------------------------------
# frozen-automaton queries (CSR transitions)
# ---------------------------------------------------------------------------

@_jit
def tr_lookup(s, c, tstart, tsym, tdst):
    lo = tstart[s]
    hi = tstart[s + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        if tsym[mid] < c:
            lo = mid + 1
        else:
            hi = mid
    if lo < tstart[s + 1] and tsym[lo] == c:
        return np.int64(tdst[lo])
    return np.int64(-1)


@_jit
def walk_states(codes, lo, hi, tstart, tsym, tdst, length, link, states, mlen):
    """Matching walk: states[k] / mlen[k] describe the longest suffix of
    codes[lo:lo+k] present in the automaton."""
    s = np.int64(0)
    m = np.int64(0)
    states[0] = 0
    mlen[0] = 0
    for idx in range(lo, hi):
        c = np.int64(codes[idx])
        nxt = tr_lookup(s, c, tstart, tsym, tdst)
        while nxt < 0 and link[s] >= 0:
            s = link[s]
            m = length[s]
            nxt = tr_lookup(s, c, tstart, tsym, tdst)
        if nxt >= 0:
            s = nxt
            m += 1
        else:
            s = np.int64(0)
            m = np.int64(0)
        states[idx - lo + 1] = np.int32(s)
        mlen[idx - lo + 1] = np.int32(m)


@_jit
def side_triples(L, is_rev, states, mlen, length, minlen, link, rok_next,
                 keys, sts, fill):
    """Emit one side's admissible intervals. Forward side: substrings whose
    right boundary may close a candidate; reverse side: left boundaries.
    Keys are start*(L+1)+end in original unit coordinates."""
    cnt = np.int64(0)
    for j in range(1, L + 1):
        cap = np.int64(mlen[j])
        v = np.int64(rok_next[states[j]])
        while v > 0:
            hi_len = np.int64(length[v])
            if hi_len > cap:
                hi_len = cap
            lo_len = np.int64(minlen[v])
            if lo_len < 1:
                lo_len = 1
            for ln in range(lo_len, hi_len + 1):
                if fill:
                    if is_rev:
                        i0 = np.int64(L - j)
                        keys[cnt] = i0 * (L + 1) + (i0 + ln)
                    else:
                        keys[cnt] = np.int64(j - ln) * (L + 1) + j
                    sts[cnt] = np.int32(v)
                cnt += 1
            lk = link[v]
            v = np.int64(rok_next[lk]) if lk >= 0 else np.int64(-1)
    return cnt


@_jit
def merge_keys(fk, fs, rk, rs, ok, of, orr, fill):
    i = 0
    j = 0
    c = np.int64(0)
    while i < fk.shape[0] and j < rk.shape[0]:
        a = fk[i]
        b = rk[j]
        if a < b:
            i += 1
        elif a > b:
            j += 1
        else:
            if fill:
                ok[c] = a
                of[c] = fs[i]
                orr[c] = rs[j]
            c += 1
            i += 1
            j += 1
    return c


# ---------------------------------------------------------------------------
# live-automaton queries (dict transitions, used by the incremental index)
# ---------------------------------------------------------------------------

@_jit(cache=False)
def live_walk(codes, lo, hi, trans, length, link, states, mlen):
    s = np.int64(0)
    m = np.int64(0)
    states[0] = 0
    mlen[0] = 0
    for idx in range(lo, hi):
        c = np.int64(codes[idx])
        nxt = _dget(trans, s * KPAD + c)
        while nxt < 0 and link[s] >= 0:
            s = link[s]
            m = np.int64(length[s])
            nxt = _dget(trans, s * KPAD + c)
        if nxt >= 0:
            s = nxt
            m += 1
        else:
            s = np.int64(0)
            m = np.int64(0)
        states[idx - lo + 1] = np.int32(s)
        mlen[idx - lo + 1] = np.int32(m)


@_jit(cache=False)
def live_side_triples(L, is_rev, states, mlen, length, link, term, outdeg,
                      keys, fill):
    cnt = np.int64(0)
    for j in range(1, L + 1):
        cap = np.int64(mlen[j])
        v = np.int64(states[j])
        while v > 0:
            if outdeg[v] >= 2 or term[v] != 0:
                hi_len = np.int64(length[v])
                if hi_len > cap:
                    hi_len = cap
                lk = link[v]
                lo_len = np.int64(length[lk]) + 1 if lk >= 0 else np.int64(1)
                if lo_len < 1:
                    lo_len = 1
                for ln in range(lo_len, hi_len + 1):
                    if fill:
                        if is_rev:
                            i0 = np.int64(L - j)
                            keys[cnt] = i0 * (L + 1) + (i0 + ln)
                        else:
                            keys[cnt] = np.int64(j - ln) * (L + 1) + j
                    cnt += 1
            v = np.int64(link[v])
    return cnt


@_jit(cache=False)
def merge_keys_plain(fk, rk, ok, fill):
    i = 0
    j = 0
    c = np.int64(0)
    while i < fk.shape[0] and j < rk.shape[0]:
        a = fk[i]
        b = rk[j]
        if a < b:
            i += 1
        elif a > b:
            j += 1
        else:
            if fill:
                ok[c] = a
            c += 1
            i += 1
            j += 1
    return c


# ---------------------------------------------------------------------------
# decomposition DP over candidate intervals of one unit
# ---------------------------------------------------------------------------
# Intervals arrive sorted by start*(L+1)+end. An arc u->v exists when
# start_u < start_v <= end_u < end_v; its weight is the log-probability of
# the overlap interval [start_v, end_u), the empty overlap having id 0.
# A path source starts at 0, a sink ends at L, and a valid decomposition
# has at least one arc.

@_jit
def ovl_id(s, e, L, keys, cid):
    if s == e:
        return np.int64(0)
    k = np.int64(s) * (L + 1) + e
    lo = 0
    hi = keys.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < k:
            lo = mid + 1
        else:
            hi = mid
    if lo < keys.shape[0] and keys[lo] == k:
        return np.int64(cid[lo])
    return np.int64(-1)


@_jit
def dp_forward(L, ii, jj, keys, cid, logp, allowed, f, fa, fold):
    n = ii.shape[0]
    for e in range(L + 1):
        fold[e] = NEG
    idx = 0
    while idx < n:
        s = np.int64(ii[idx])
        g = idx
        while g < n and ii[g] == s:
            g += 1
        for v in range(idx, g):
            bv = NEG
            for e in range(s, jj[v]):
                if fold[e] == NEG:
                    continue
                oid = ovl_id(s, e, L, keys, cid)
                if oid < 0 or allowed[oid] == 0:
                    continue
                val = fold[e] + logp[oid]
                if val > bv:
                    bv = val
            fa[v] = bv
            f0 = 0.0 if s == 0 else NEG
            f[v] = f0 if f0 > bv else bv
        for v in range(idx, g):
            if f[v] > fold[jj[v]]:
                fold[jj[v]] = f[v]
        idx = g


@_jit
def dp_backward(L, ii, jj, keys, cid, logp, allowed, order2, b, ba, fold):
    n = ii.shape[0]
    for e in range(L + 1):
        fold[e] = NEG
    idx = n - 1
    while idx >= 0:
        E = np.int64(jj[order2[idx]])
        g = idx
        while g >= 0 and jj[order2[g]] == E:
            g -= 1
        for t in range(g + 1, idx + 1):
            u = order2[t]
            bv = NEG
            for st in range(ii[u] + 1, E + 1):
                if fold[st] == NEG:
                    continue
                oid = ovl_id(st, E, L, keys, cid)
                if oid < 0 or allowed[oid] == 0:
                    continue
                val = fold[st] + logp[oid]
                if val > bv:
                    bv = val
            ba[u] = bv
            b0 = 0.0 if E == L else NEG
            b[u] = b0 if b0 > bv else bv
        for t in range(g + 1, idx + 1):
            u = order2[t]
            if b[u] > fold[ii[u]]:
                fold[ii[u]] = b[u]
        idx = g


@_jit
def dp_best(L, jj, fa):
    best = NEG
    for v in range(jj.shape[0]):
        if jj[v] == L and fa[v] > best:
            best = fa[v]
    return best


@_jit
def dp_mark(L, ii, jj, keys, cid, logp, allowed, order2, f, b, best, eps,
            marked, fold, ovbuf, fill):
    """Mark every interval and overlap lying on some decomposition of score
    >= best - eps. Two sweeps: arcs into v (head) and arcs out of u (tail)."""
    n = ii.shape[0]
    thr = best - eps
    nov = np.int64(0)
    for e in range(L + 1):
        fold[e] = NEG
    idx = 0
    while idx < n:
        s = np.int64(ii[idx])
        g = idx
        while g < n and ii[g] == s:
            g += 1
        for v in range(idx, g):
            if b[v] == NEG:
                continue
            for e in range(s, jj[v]):
                if fold[e] == NEG:
                    continue
                oid = ovl_id(s, e, L, keys, cid)
                if oid < 0 or allowed[oid] == 0:
                    continue
                if fold[e] + logp[oid] + b[v] >= thr:
                    marked[v] = 1
                    if fill:
                        ovbuf[nov] = s * (L + 1) + e
                    nov += 1
        for v in range(idx, g):
            if f[v] > fold[jj[v]]:
                fold[jj[v]] = f[v]
        idx = g
    for e in range(L + 1):
        fold[e] = NEG
    idx = n - 1
    while idx >= 0:
        E = np.int64(jj[order2[idx]])
        g = idx
        while g >= 0 and jj[order2[g]] == E:
            g -= 1
        for t in range(g + 1, idx + 1):
            u = order2[t]
            if f[u] == NEG:
                continue
            for st in range(ii[u] + 1, E + 1):
                if fold[st] == NEG:
                    continue
                oid = ovl_id(st, E, L, keys, cid)
                if oid < 0 or allowed[oid] == 0:
                    continue
                if f[u] + logp[oid] + fold[st] >= thr:
                    marked[u] = 1
                    if fill:
                        ovbuf[nov] = np.int64(st) * (L + 1) + E
                    nov += 1
        for t in range(g + 1, idx + 1):
            u = order2[t]
            if b[u] > fold[ii[u]]:
                fold[ii[u]] = b[u]
        idx = g
    return nov


@_jit
def canonical_path(L, ii, jj, keys, cid, logp, allowed, b, ba, best, eps,
                   out_idx):
    """Stepwise smallest-(start,end) optimal decomposition. Returns its
    length, or 0 if there is no decomposition."""
    n = ii.shape[0]
    thr = best - eps
    if best == NEG:
        return np.int64(0)
    cur = np.int64(-1)
    for v in range(n):
        if ii[v] == 0 and ba[v] >= thr:
            cur = v
            break
    if cur < 0:
        return np.int64(0)
    out_idx[0] = cur
    m = np.int64(1)
    acc = 0.0
    while jj[cur] < L:
        s_lo = np.int64(ii[cur]) + 1
        e_cur = np.int64(jj[cur])
        k_lo = s_lo * (L + 1)
        lo = 0
        hi = n
        while lo < hi:
            mid = (lo + hi) >> 1
            if keys[mid] < k_lo:
                lo = mid + 1
            else:
                hi = mid
        nxt = np.int64(-1)
        w_take = 0.0
        for v in range(lo, n):
            if ii[v] > e_cur:
                break
            if jj[v] <= e_cur:
                continue
            oid = ovl_id(np.int64(ii[v]), e_cur, L, keys, cid)
            if oid < 0 or allowed[oid] == 0:
                continue
            w = logp[oid]
            if acc + w + b[v] >= thr:
                nxt = v
                w_take = w
                break
        if nxt < 0:
            return np.int64(0)
        acc += w_take
        cur = nxt
        out_idx[m] = cur
        m += 1
    return m


# ---------------------------------------------------------------------------
# per-pass statistics over the phrase multiset
# ---------------------------------------------------------------------------

@_jit
def bsearch_i64(arr, x):
    lo = 0
    hi = arr.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    if lo < arr.shape[0] and arr[lo] == x:
        return np.int64(lo)
    return np.int64(-1)


@_jit
def stats_pass(m, c_fstate, c_len, pad, c_keys, codes, offsets,
               f_tstart, f_tsym, f_tdst, f_length, f_minlen, f_link,
               f_roknext, f_first_unit, f_first_end,
               r_tstart, r_tsym, r_tdst, r_length, r_minlen, r_link,
               r_roknext, pref, suff, inf, ov):
    """Accumulate prefix / suffix / interior / overlap-split statistics of
    every candidate against the multiset m. For each phrase in the multiset,
    splits into an in-multiset prefix and suffix pair are admitted when the
    prefix or the suffix is boundary-stable (every longer in-corpus candidate
    prefix, resp. suffix, is also in the multiset); each distinct overlap
    string counts once per phrase. Id 0 is the empty string."""
    nc = m.shape[0]
    e0 = np.empty(0, np.int64)
    e0s = np.empty(0, np.int32)
    for p in range(1, nc):
        mp = m[p]
        if mp <= 0:
            continue
        fs = np.int64(c_fstate[p])
        ln = np.int64(c_len[p])
        u = np.int64(f_first_unit[fs])
        hi = offsets[u] + np.int64(f_first_end[fs])
        lo = hi - ln
        L = ln
        pref[0] += mp
        suff[0] += mp
        inf[0] += mp * (L + 1)
        if L == 1:
            continue
        states = np.empty(L + 1, np.int32)
        mlen = np.empty(L + 1, np.int32)
        walk_states(codes, lo, hi, f_tstart, f_tsym, f_tdst, f_length,
                    f_link, states, mlen)
        nf = side_triples(L, False, states, mlen, f_length, f_minlen,
                          f_link, f_roknext, e0, e0s, False)
        fk = np.empty(nf, np.int64)
        fst2 = np.empty(nf, np.int32)
        side_triples(L, False, states, mlen, f_length, f_minlen,
                     f_link, f_roknext, fk, fst2, True)
        o1 = np.argsort(fk)
        fk = fk[o1]
        fst2 = fst2[o1]
        rc = codes[lo:hi][::-1].copy()
        walk_states(rc, 0, L, r_tstart, r_tsym, r_tdst, r_length,
                    r_link, states, mlen)
        nr = side_triples(L, True, states, mlen, r_length, r_minlen,
                          r_link, r_roknext, e0, e0s, False)
        rk = np.empty(nr, np.int64)
        rst2 = np.empty(nr, np.int32)
        side_triples(L, True, states, mlen, r_length, r_minlen,
                     r_link, r_roknext, rk, rst2, True)
        o2 = np.argsort(rk)
        rk = rk[o2]
        rst2 = rst2[o2]
        nmg = merge_keys(fk, fst2, rk, rst2, e0, e0s, e0s, False)
        kk = np.empty(nmg, np.int64)
        kf = np.empty(nmg, np.int32)
        kr = np.empty(nmg, np.int32)
        merge_keys(fk, fst2, rk, rst2, kk, kf, kr, True)
        npref = 0
        nsuf = 0
        for t in range(nmg):
            i0 = kk[t] // (L + 1)
            j0 = kk[t] % (L + 1)
            if i0 == 0 and j0 == L:
                continue
            gk = np.int64(kf[t]) * pad + (j0 - i0)
            cid = bsearch_i64(c_keys, gk)
            if cid < 0:
                continue
            inf[cid] += mp
            if i0 == 0:
                pref[cid] += mp
                npref += 1
            elif j0 == L:
                suff[cid] += mp
                nsuf += 1
        if npref == 0 or nsuf == 0:
            continue
        pj = np.empty(npref, np.int64)
        pin = np.empty(npref, np.uint8)
        si = np.empty(nsuf, np.int64)
        sin_ = np.empty(nsuf, np.uint8)
        a = 0
        bn = 0
        for t in range(nmg):
            i0 = kk[t] // (L + 1)
            j0 = kk[t] % (L + 1)
            if i0 == 0 and j0 == L:
                continue
            side = 0
            if i0 == 0:
                side = 1
            elif j0 == L:
                side = 2
            if side == 0:
                continue
            gk = np.int64(kf[t]) * pad + (j0 - i0)
            cid = bsearch_i64(c_keys, gk)
            inm = np.uint8(1) if (cid >= 0 and m[cid] > 0) else np.uint8(0)
            if side == 1:
                pj[a] = j0
                pin[a] = inm
                a += 1
            else:
                si[bn] = i0
                sin_[bn] = inm
                bn += 1
        pstab = np.empty(npref, np.uint8)
        ok = 1
        for t in range(npref - 1, -1, -1):
            pstab[t] = np.uint8(1) if (pin[t] == 1 and ok == 1) else np.uint8(0)
            if pin[t] == 0:
                ok = 0
        sstab = np.empty(nsuf, np.uint8)
        ok = 1
        for t in range(nsuf):
            sstab[t] = np.uint8(1) if (sin_[t] == 1 and ok == 1) else np.uint8(0)
            if sin_[t] == 0:
                ok = 0
        fbuf = np.empty(npref * nsuf, np.int64)
        nfb = 0
        for a2 in range(npref):
            if pin[a2] == 0:
                continue
            j1 = pj[a2]
            for b2 in range(nsuf):
                if sin_[b2] == 0:
                    continue
                i2 = si[b2]
                if i2 > j1:
                    continue
                if pstab[a2] == 0 and sstab[b2] == 0:
                    continue
                if i2 == j1:
                    fid = np.int64(0)
                else:
                    pos = bsearch_i64(kk, i2 * (L + 1) + j1)
                    if pos < 0:
                        continue
                    gk = np.int64(kf[pos]) * pad + (j1 - i2)
                    fid = bsearch_i64(c_keys, gk)
                    if fid < 0:
                        continue
                fbuf[nfb] = fid
                nfb += 1
        if nfb > 0:
            sub = np.sort(fbuf[:nfb])
            prev = np.int64(-1)
            for t in range(nfb):
                if sub[t] != prev:
                    ov[sub[t]] += mp
                    prev = sub[t]
