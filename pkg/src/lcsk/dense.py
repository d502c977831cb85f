"""Dense solver: walk the whole threshold array per row with successor queries.

Preferable when matches are plentiful: instead of visiting every match,
row i updates each rank h of the threshold array in place.  With j' the
rank-(h-1) threshold k rows back, the candidate column is the first match
at or after j' + k; it replaces the current rank-h entry when smaller.
Arrays stay strictly increasing between the sentinels 0 and n+1 and hold
at most l + 2 <= n/k + 2 entries, so length-only mode needs a ring of
k+1 plain lists (O(n) words).  Successors use binary search over the
row's match slice, giving O(m * (l+2) * log n + m + n) time.
"""

from __future__ import annotations

import time

from .core import LcskResult, Problem, timed_result
from .index import MatchIndex

Record = tuple[int, int, int]


def _sweep(problem: Problem, idx: MatchIndex, keep_rows: bool):
    m, n, k = problem.m, problem.n, problem.k
    inf_key = n + 1
    sentinel = [0, inf_key]
    arena: list[Record] = []

    if keep_rows:
        rows: list[list[int]] = [sentinel] * min(k, m + 1)
        links: list[list[int]] = [[-1, -1]] * min(k, m + 1)
    else:
        ring = [list(sentinel) for _ in range(k + 1)]
        ring_links = [[-1, -1] for _ in range(k + 1)]

    for i in range(k, m + 1):
        if keep_rows:
            thr_back = rows[i - k]
            bp_back = links[i - k]
            cur = list(rows[i - 1])
            bp = list(links[i - 1])
        else:
            thr_back = ring[(i - k) % (k + 1)]
            bp_back = ring_links[(i - k) % (k + 1)]
            prev = ring[(i - 1) % (k + 1)]
            cur = ring[i % (k + 1)]
            if cur is not prev:
                cur.clear()
                cur.extend(prev)
            bp_prev = ring_links[(i - 1) % (k + 1)]
            bp = ring_links[i % (k + 1)]
            if bp is not bp_prev:
                bp.clear()
                bp.extend(bp_prev)

        # iterate over the pre-copy length; an in-row append only adds the
        # trailing sentinel, which the next row picks up
        for h in range(1, len(cur)):
            if h - 1 >= len(thr_back) - 1:
                break  # no rank h-1 threshold k rows back, nor for larger h
            jp = thr_back[h - 1]
            x = idx.successor_in_row(i, jp + k)
            if x is None:
                continue
            jpp = cur[h]
            if x < jpp:
                cur[h] = x
                rec = len(arena)
                arena.append((i, x, bp_back[h - 1]))
                bp[h] = rec
                if jpp == inf_key:
                    cur.append(inf_key)
                    bp.append(-1)

        if keep_rows:
            rows.append(cur)
            links.append(bp)

    if keep_rows:
        return rows, links, arena
    final = ring[m % (k + 1)] if m >= k else ring[0]
    final_bp = ring_links[m % (k + 1)] if m >= k else ring_links[0]
    return [final], [final_bp], arena


def threshold_rows(problem: Problem, idx: MatchIndex) -> list[list[int]]:
    """All m+1 threshold arrays, for cross-checks against the other solvers."""
    rows, _, _ = _sweep(problem, idx, keep_rows=True)
    return rows


def lcsk_dense(problem: Problem, idx: MatchIndex, extract: bool = False) -> LcskResult:
    started = time.perf_counter()
    rows, links, arena = _sweep(problem, idx, keep_rows=extract)
    final = rows[-1]
    length = len(final) - 2
    pairs = None
    if extract:
        pairs = []
        if length > 0:
            rec = links[-1][length]
            while rec >= 0:
                i, x, rec = arena[rec]
                pairs.append((i, x))
            pairs.reverse()
    return timed_result(length, pairs, "dense", started)
