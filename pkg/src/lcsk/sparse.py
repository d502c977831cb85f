"""Sparse solver: visit only match cells, keep thresholds in a persistent tree.

For every row i the tree version ``roots[i]`` holds, between the sentinels
0 and n+1, the leftmost column reaching each solution rank in the first i
rows: ``select(roots[i], h)`` is the smallest j with the prefix solution
value of (a[:i], b[:j]) at least h.  Copying a version costs nothing, so
row i starts as roots[i-1] and each match column x in ascending order is
tried against the state k rows back:

    j' = pred(roots[i-k], x - k + 1)     # rightmost usable threshold
    h  = rank(roots[i-k], j')            # its rank
    j" = select(roots[i], h + 1)         # current holder of rank h+1
    if x < j": replace j" by x (insert x only, when j" is the sentinel)

Ascending in-row order with queries k rows back is sound because two
increments of consecutive ranks can never sit within k rows and fewer
than k columns of each other.  Total time O(m + n + r log l).
"""

from __future__ import annotations

import time

from . import pstree
from .core import LcskResult, Problem, timed_result
from .index import MatchIndex

#: backlink record: (row end, column end, previous record id or -1)
Record = tuple[int, int, int]


def _sentinel_tree(n: int) -> pstree.Node:
    return pstree.insert(pstree.insert(None, 0, -1), n + 1, -1)


def _sweep(problem: Problem, idx: MatchIndex):
    m, n, k = problem.m, problem.n, problem.k
    inf_key = n + 1
    base = _sentinel_tree(n)
    roots: list[pstree.Node] = [base] * min(k, m + 1)
    arena: list[Record] = []
    t = base
    for i in range(k, m + 1):
        back = roots[i - k]
        for x in idx.matches_in_row(i):
            x = int(x)
            jp = pstree.pred(back, x - k + 1)
            h = pstree.rank(back, jp)
            jpp = pstree.select(t, h + 1)
            if x < jpp:
                rec = len(arena)
                arena.append((i, x, pstree.payload_of(back, jp)))
                if jpp != inf_key:
                    t = pstree.delete(t, jpp)
                t = pstree.insert(t, x, rec)
        roots.append(t)
    return roots, arena


def _walk(arena: list[Record], rec: int) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    while rec >= 0:
        i, x, rec = arena[rec]
        pairs.append((i, x))
    pairs.reverse()
    return pairs


def threshold_roots(problem: Problem, idx: MatchIndex) -> list[pstree.Node]:
    """All m+1 tree versions, for threshold-level inspection and tests."""
    roots, _ = _sweep(problem, idx)
    return roots


def lcsk_sparse(problem: Problem, idx: MatchIndex, extract: bool = False) -> LcskResult:
    started = time.perf_counter()
    roots, arena = _sweep(problem, idx)
    final = roots[-1]
    length = pstree.size(final) - 2
    pairs = None
    if extract:
        if length > 0:
            top = pstree.select(final, length)
            pairs = _walk(arena, pstree.payload_of(final, top))
        else:
            pairs = []
    return timed_result(length, pairs, "sparse", started)
