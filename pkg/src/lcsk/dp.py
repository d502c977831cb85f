"""Row-wise O(m*n) dynamic program driven by the match index.

Each row is one vectorized pass: match columns are seeded with the value
k rows and k columns back plus one, then a running maximum against the
previous row realizes max(M(i, j-1), M(i-1, j)) for the remaining cells.
The seed may be assigned outright because at a match cell the match case
dominates both neighbors.  Length-only mode keeps a ring of the last k+1
rows (O(nk) space); extraction mode stores a move code per cell.
"""

from __future__ import annotations

import time

import numpy as np

from .core import LcskResult, Problem, timed_result
from .index import MatchIndex

# move codes: 0 = left, 1 = up, 2 = take the match and jump (-k, -k)
LEFT, UP, MATCH = 0, 1, 2


def _sweep_rows(problem: Problem, idx: MatchIndex, codes: np.ndarray | None):
    m, n, k = problem.m, problem.n, problem.k
    ring = np.zeros((k + 1, n + 1), dtype=np.int32)
    if m < k or n < k:
        return ring[0]
    for i in range(k, m + 1):
        prev = ring[(i - 1) % (k + 1)]
        back = ring[(i - k) % (k + 1)]
        cur = ring[i % (k + 1)]
        np.copyto(cur, prev)
        fb, fa = idx.row_match_bounds(i)
        starts = idx.s_start[fb:fa]
        if len(starts):
            cols = starts + k
            cur[cols] = np.maximum(back[starts] + 1, prev[cols])
        np.maximum.accumulate(cur, out=cur)
        if codes is not None:
            row_codes = codes[i]
            row_codes[cur == prev] = UP
            if len(starts):
                row_codes[starts + k] = MATCH
    return ring[m % (k + 1)]


def full_matrix(problem: Problem, idx: MatchIndex) -> np.ndarray:
    """The complete (m+1)x(n+1) value matrix; intended for tests and checks."""
    m, n, k = problem.m, problem.n, problem.k
    M = np.zeros((m + 1, n + 1), dtype=np.int32)
    for i in range(k, m + 1):
        prev = M[i - 1]
        cur = M[i]
        np.copyto(cur, prev)
        fb, fa = idx.row_match_bounds(i)
        starts = idx.s_start[fb:fa]
        if len(starts):
            cur[starts + k] = np.maximum(M[i - k][starts] + 1, prev[starts + k])
        np.maximum.accumulate(cur, out=cur)
    return M


def _walk_codes(problem: Problem, codes: np.ndarray) -> list[tuple[int, int]]:
    k = problem.k
    i, j = problem.m, problem.n
    pairs: list[tuple[int, int]] = []
    while i >= k and j >= k:
        c = codes[i, j]
        if c == MATCH:
            pairs.append((i, j))
            i -= k
            j -= k
        elif c == UP:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs


def lcsk_dp(problem: Problem, idx: MatchIndex, extract: bool = False) -> LcskResult:
    """Solve one instance; with ``extract`` also recover an optimal chain.

    The extraction tie-break is match, then up, then left, the same order
    the oracle uses, so the two produce identical pair lists.
    """
    started = time.perf_counter()
    m, n, k = problem.m, problem.n, problem.k
    codes = None
    if extract:
        codes = np.zeros((m + 1, n + 1), dtype=np.uint8)
    last = _sweep_rows(problem, idx, codes)
    length = int(last[n])
    pairs = None
    if extract:
        pairs = _walk_codes(problem, codes) if m >= k and n >= k else []
    return timed_result(length, pairs, "dp", started)
