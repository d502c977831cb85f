"""Ground-truth solvers used to validate the fast algorithms.

``oracle_dp`` evaluates the recurrence with direct O(k) substring
comparison per cell (no match index), so it is deliberately the slow,
obviously-correct O(k*m*n) baseline.  ``oracle_exhaustive`` enumerates
chains of non-overlapping equal k-string pairs outright and is only
feasible for tiny inputs.
"""

from __future__ import annotations

import time

from .core import LcskResult, Problem, timed_result

EXHAUSTIVE_LIMIT = 20


def oracle_matrix(problem: Problem) -> list[list[int]]:
    """Full (m+1)x(n+1) value matrix from the recurrence, direct compares."""
    a, b, k = problem.a, problem.b, problem.k
    m, n = problem.m, problem.n
    M = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(k, m + 1):
        ai = a[i - k:i]
        row = M[i]
        up = M[i - 1]
        back = M[i - k]
        for j in range(k, n + 1):
            if ai == b[j - k:j]:
                row[j] = back[j - k] + 1
            else:
                left = row[j - 1]
                above = up[j]
                row[j] = left if left >= above else above
    return M


def backtrack_pairs(problem: Problem, M: list[list[int]]) -> list[tuple[int, int]]:
    """Recover one optimal chain; tie-break match, then up, then left."""
    a, b, k = problem.a, problem.b, problem.k
    i, j = problem.m, problem.n
    pairs: list[tuple[int, int]] = []
    while i >= k and j >= k and M[i][j] > 0:
        if a[i - k:i] == b[j - k:j]:
            pairs.append((i, j))
            i -= k
            j -= k
        elif M[i - 1][j] == M[i][j]:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs


def oracle_dp(problem: Problem) -> LcskResult:
    """Exact length and one optimal chain via the naive dynamic program."""
    started = time.perf_counter()
    M = oracle_matrix(problem)
    pairs = backtrack_pairs(problem, M)
    return timed_result(M[problem.m][problem.n], pairs, "oracle", started)


def oracle_exhaustive(problem: Problem) -> int:
    """Maximal chain length by branch-and-bound over all match chains.

    Guarded to m, n <= 20; the bound prunes on the best possible extension
    min((m - i) // k, (n - j) // k) past each candidate pair.
    """
    a, b, k = problem.a, problem.b, problem.k
    m, n = problem.m, problem.n
    if m > EXHAUSTIVE_LIMIT or n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"oracle_exhaustive is limited to m, n <= {EXHAUSTIVE_LIMIT}")
    matches = [
        (i, j)
        for i in range(k, m + 1)
        for j in range(k, n + 1)
        if a[i - k:i] == b[j - k:j]
    ]
    best = 0

    def extend(pos: int, last_i: int, last_j: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        for t in range(pos, len(matches)):
            i, j = matches[t]
            # matches are sorted by i, so once the row bound fails it stays failed
            if count + 1 + (m - i) // k <= best:
                return
            if i < last_i + k or j < last_j + k:
                continue
            if count + 1 + min((m - i) // k, (n - j) // k) <= best:
                continue
            extend(t + 1, i, j, count + 1)

    extend(0, -k, -k, 0)
    return best
