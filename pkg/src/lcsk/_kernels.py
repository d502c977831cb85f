"""Compiled hot loops: suffix sorting, LCP, and blockwise row transitions.

Everything here is plain array-in/array-out so the numba signatures stay
stable and the disk cache is reused across processes.  Bit rows are packed
little-endian into uint64 words: column j lives in word j >> 6, bit j & 63
(column 0 is a never-set boundary bit).
"""

from __future__ import annotations

import numpy as np
from numba import njit

_U1 = np.uint64(1)
_U63 = np.uint64(63)


@njit(cache=True)
def suffix_sort(data):
    """Suffix array of an int32 array by rank doubling with counting sorts.

    O(L log L) worst case; each round is two linear passes, so random text
    over a small alphabet finishes in a handful of rounds.
    """
    n = len(data)
    sa = np.empty(n, dtype=np.int64)
    if n == 0:
        return sa
    rank = np.empty(n, dtype=np.int64)
    tmp = np.empty(n, dtype=np.int64)
    new_rank = np.empty(n, dtype=np.int64)

    kmax = 0
    for i in range(n):
        if data[i] > kmax:
            kmax = data[i]
    cnt = np.zeros(kmax + 2, dtype=np.int64)
    for i in range(n):
        cnt[data[i] + 1] += 1
    for c in range(1, kmax + 2):
        cnt[c] += cnt[c - 1]
    for i in range(n):
        sa[cnt[data[i]]] = i
        cnt[data[i]] += 1
    rank[sa[0]] = 0
    for t in range(1, n):
        r = rank[sa[t - 1]]
        if data[sa[t]] != data[sa[t - 1]]:
            r += 1
        rank[sa[t]] = r

    h = 1
    while h < n and rank[sa[n - 1]] != n - 1:
        # stable order by the second key (rank at offset h, absent = lowest)
        p = 0
        for i in range(n - h, n):
            tmp[p] = i
            p += 1
        for t in range(n):
            j = sa[t]
            if j >= h:
                tmp[p] = j - h
                p += 1
        # stable counting sort by the first key
        cnt2 = np.zeros(n + 1, dtype=np.int64)
        for i in range(n):
            cnt2[rank[i] + 1] += 1
        for c in range(1, n + 1):
            cnt2[c] += cnt2[c - 1]
        for t in range(n):
            x = tmp[t]
            sa[cnt2[rank[x]]] = x
            cnt2[rank[x]] += 1
        new_rank[sa[0]] = 0
        for t in range(1, n):
            cur, prv = sa[t], sa[t - 1]
            r = new_rank[prv]
            if rank[cur] != rank[prv]:
                r += 1
            else:
                rc = rank[cur + h] if cur + h < n else -1
                rp = rank[prv + h] if prv + h < n else -1
                if rc != rp:
                    r += 1
            new_rank[cur] = r
        for i in range(n):
            rank[i] = new_rank[i]
        h *= 2
    return sa


@njit(cache=True)
def sort_pairs(gids, starts, start_range, gid_range):
    """Permutation sorting (gid, start) pairs: two stable counting passes."""
    n = len(gids)
    order = np.empty(n, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    cnt = np.zeros(start_range + 1, dtype=np.int64)
    for t in range(n):
        cnt[starts[t] + 1] += 1
    for c in range(1, start_range + 1):
        cnt[c] += cnt[c - 1]
    for t in range(n):
        s = starts[t]
        order[cnt[s]] = t
        cnt[s] += 1
    cnt2 = np.zeros(gid_range + 2, dtype=np.int64)
    for t in range(n):
        cnt2[gids[t] + 1] += 1
    for c in range(1, gid_range + 2):
        cnt2[c] += cnt2[c - 1]
    for t in range(n):
        x = order[t]
        g = gids[x]
        perm[cnt2[g]] = x
        cnt2[g] += 1
    return perm


@njit(cache=True)
def lcp_from_suffix_array(data, sa, rank):
    """LCP table by Kasai's method: lcp[t] = LCP(suffix sa[t-1], suffix sa[t])."""
    n = len(sa)
    lcp = np.zeros(n, dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and data[i + h] == data[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


@njit(cache=True, inline="always")
def _getbit(row, j):
    return (row[j >> 6] >> np.uint64(j & 63)) & _U1


@njit(cache=True, inline="always")
def _setbit(row, j):
    row[j >> 6] |= _U1 << np.uint64(j & 63)


@njit(cache=True, inline="always")
def _window(row, p, b):
    """b bits of the row starting at bit position p >= 0, as an int64."""
    w = p >> 6
    off = np.uint64(p & 63)
    lo = row[w] >> off
    hi = (row[w + 1] << (_U63 - off)) << _U1  # two shifts: off == 0 stays defined
    return np.int64((lo | hi) & np.uint64((1 << b) - 1))


@njit(cache=True)
def tabulation_rows(
    m,
    n,
    k,
    b,
    table,
    s_start,
    row_fb,
    row_fa,
    row_cache,
    cache_rows,
    rows,
    store_all,
    scratch,
):
    """Fill increment bit rows via table lookups on b-wide snippets.

    Per row: cells left of column 2k (and whole rows below 2k) are evaluated
    scalar so both carried differences stay in {0, 1}; the remaining columns
    advance one table lookup per snippet, carrying (d1, d2) across block
    boundaries.  ``rows`` is either all m+1 rows (store_all, extraction) or
    a k+1-slot ring.  Match bit rows come from ``cache_rows`` when the row's
    group is dense, else are scattered into ``scratch`` and wiped after use.
    """
    W = rows.shape[1]
    nslots = k + 1
    bmask = np.int64((1 << b) - 1)
    for i in range(k, m + 1):
        if store_all:
            cur = rows[i]
            prev = rows[i - 1]
            back = rows[i - k]
        else:
            cur = rows[i % nslots]
            prev = rows[(i - 1) % nslots]
            back = rows[(i - k) % nslots]
        for w in range(W):
            cur[w] = 0
        ci = row_cache[i]
        if ci >= 0:
            ml = cache_rows[ci]
        else:
            ml = scratch
            for t in range(row_fb[i], row_fa[i]):
                _setbit(ml, np.int64(s_start[t]) + k)

        border = 2 * k - 1
        if i < 2 * k or border > n:
            border = n
        vcur = np.int64(0)
        vprev = np.int64(0)
        vback = np.int64(0)
        for j in range(1, border + 1):
            vprev += np.int64(_getbit(prev, j))
            if j - k >= 1:
                vback += np.int64(_getbit(back, j - k))
            cand = vprev
            if vcur > cand:
                cand = vcur
            if _getbit(ml, j):
                mv = vback + 1
                if mv > cand:
                    cand = mv
            if cand > vcur:
                _setbit(cur, j)
                vcur = cand

        d1 = vcur - vprev
        d2 = vcur - vback
        base = border
        while base < n:
            pr = _window(prev, base + 1, b)
            kb = _window(back, base + 1 - k, b)
            mb = _window(ml, base + 1, b)
            key = mb | (pr << b) | (kb << (2 * b)) | (d1 << (3 * b)) | (d2 << (3 * b + 1))
            e = np.int64(table[key])
            out = e & bmask
            if base + b > n:
                out &= (np.int64(1) << np.int64(n - base)) - 1
            p = base + 1
            w = p >> 6
            off = np.uint64(p & 63)
            cur[w] |= np.uint64(out) << off
            if np.int64(off) + b > 64:
                cur[w + 1] |= (np.uint64(out) >> (_U63 - off)) >> _U1
            d1 = (e >> b) & 1
            d2 = (e >> (b + 1)) & 1
            base += b

        if ci < 0:
            # wipe only the words this row touched; scratch holds no other bits
            for t in range(row_fb[i], row_fa[i]):
                j = np.int64(s_start[t]) + k
                ml[j >> 6] = 0
