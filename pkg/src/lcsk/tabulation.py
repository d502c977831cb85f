"""Blockwise tabulation solver: per-row bit vectors advanced b cells at a time.

Row i is encoded as a bit row where bit j says the value grew between
columns j-1 and j; the prefix popcount of bits 1..j recovers the value at
(i, j).  A snippet of b consecutive output bits depends only on the same
window of the previous row, the window k columns back in the row k rows
up, the window of the row's match bits, and the two boundary differences

    d1 = M(i, j) - M(i-1, j)        d2 = M(i, j) - M(i-k, j-k)

both always in {0, 1}.  All 2^(3b+2) transitions are precomputed once into
a lookup table, and the main loop then costs O(m * n / b) lookups.  Border
cells (rows below 2k, columns below 2k) are evaluated scalar so the
virtual all-zero rows/prefixes never widen the difference encoding.

The table rebuilds relative values from each key by direct simulation of
the recurrence, taking the max over all three candidates at match bits;
on reachable states this equals the exclusive match rule because the
match case dominates both neighbors.  Increments and the outgoing
differences are clamped to {0, 1}, which only disciplines keys no real
row can produce.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import LcskResult, Problem, timed_result
from .index import MatchIndex

MIN_BLOCK_WIDTH = 4
MAX_BLOCK_WIDTH = 8
DEFAULT_BLOCK_WIDTH = 6

_table_cache: dict[int, "BlockTable"] = {}


@dataclass(frozen=True)
class BlockTable:
    """Precomputed snippet transitions for one block width.

    ``entries[key]`` packs (output snippet: b bits, d1': 1 bit, d2': 1 bit)
    where ``key`` packs (match snippet, previous-row snippet, k-back-row
    snippet, d1, d2) low to high, b bits per snippet.
    """

    b: int
    entries: np.ndarray

    @property
    def key_bits(self) -> int:
        return 3 * self.b + 2


def build_block_table(b: int) -> BlockTable:
    """Simulate the recurrence on every key; O(2^(3b+2) * b) build."""
    if not MIN_BLOCK_WIDTH <= b <= MAX_BLOCK_WIDTH:
        raise ValueError(
            f"block width must be in [{MIN_BLOCK_WIDTH}, {MAX_BLOCK_WIDTH}]"
        )
    nkeys = 1 << (3 * b + 2)
    dtype = np.uint8 if b + 2 <= 8 else np.uint16
    entries = np.empty(nkeys, dtype=dtype)
    chunk = min(nkeys, 1 << 20)
    for lo in range(0, nkeys, chunk):
        keys = np.arange(lo, lo + chunk, dtype=np.int64)
        mb = (keys & ((1 << b) - 1)).astype(np.int32)
        pr = ((keys >> b) & ((1 << b) - 1)).astype(np.int32)
        kb = ((keys >> (2 * b)) & ((1 << b) - 1)).astype(np.int32)
        d1 = ((keys >> (3 * b)) & 1).astype(np.int32)
        d2 = ((keys >> (3 * b + 1)) & 1).astype(np.int32)
        cur = np.zeros(chunk, dtype=np.int32)    # value at the left boundary
        val_prev = -d1                           # previous-row value, same column
        val_back = -d2                           # k-back value, k columns left
        out = np.zeros(chunk, dtype=np.int64)
        for t in range(1, b + 1):
            bit = np.int32(1 << (t - 1))
            val_prev = val_prev + ((pr & bit) != 0)
            val_back = val_back + ((kb & bit) != 0)
            cand = np.maximum(cur, val_prev)
            cand = np.maximum(
                cand, np.where((mb & bit) != 0, val_back + 1, np.int32(-1))
            )
            inc = np.clip(cand - cur, 0, 1)
            out |= inc.astype(np.int64) << (t - 1)
            cur = cand
        d1_out = np.clip(cur - val_prev, 0, 1).astype(np.int64)
        d2_out = np.clip(cur - val_back, 0, 1).astype(np.int64)
        entries[lo:lo + chunk] = (out | (d1_out << b) | (d2_out << (b + 1))).astype(
            dtype
        )
    return BlockTable(b=b, entries=entries)


def block_table(b: int = DEFAULT_BLOCK_WIDTH) -> BlockTable:
    """Process-wide cached tables; b=8 is supported but memory-heavy (2^26 entries)."""
    if b not in _table_cache:
        _table_cache[b] = build_block_table(b)
    return _table_cache[b]


def _word_count(n: int) -> int:
    # one spare word so unaligned windows can always read word w+1
    return (n >> 6) + 2


def _prepare_rows(problem: Problem, idx: MatchIndex):
    """Classify rows sparse/dense and prebuild match bit rows for dense groups.

    A row is dense when its match count reaches n/64; distinct dense rows
    are bounded (their match lists partition the columns), so caching them
    by group id costs O(n) words while sparse rows are scattered on the
    fly inside the kernel.
    """
    m, n, k = problem.m, problem.n, problem.k
    W = _word_count(n)
    row_fb = np.zeros(m + 1, dtype=np.int64)
    row_fa = np.zeros(m + 1, dtype=np.int64)
    row_cache = np.full(m + 1, -1, dtype=np.int64)
    if m < k or n < k:
        return row_fb, row_fa, row_cache, np.zeros((1, W), dtype=np.uint64)

    rows_i = np.arange(k, m + 1, dtype=np.int64)
    pos = problem.n + 1 + (rows_i - k)
    fb = idx.x_fb[pos].astype(np.int64)
    fa = idx.x_fa[pos].astype(np.int64)
    row_fb[k:] = fb
    row_fa[k:] = fa
    counts = fa - fb
    threshold = max(1, n >> 6)
    gids = idx.x_gid[pos].astype(np.int64)
    dense_mask = counts >= threshold
    dense_gids = np.unique(gids[dense_mask])
    cache_rows = np.zeros((max(1, len(dense_gids)), W), dtype=np.uint64)
    for slot, g in enumerate(dense_gids):
        first = int(np.flatnonzero(gids == g)[0])
        cols = idx.s_start[fb[first]:fa[first]] + k
        words = (cols >> 6).astype(np.int64)
        bits = np.left_shift(np.uint64(1), (cols & 63).astype(np.uint64))
        np.bitwise_or.at(cache_rows[slot], words, bits)
    if len(dense_gids):
        slots = np.searchsorted(dense_gids, gids)
        slots[slots == len(dense_gids)] = 0
        row_cache[k:] = np.where(dense_gids[slots] == gids, slots, -1)
    return row_fb, row_fa, row_cache, cache_rows


def _run_kernel(problem: Problem, idx: MatchIndex, table: BlockTable, store_all: bool):
    m, n, k = problem.m, problem.n, problem.k
    W = _word_count(n)
    shape = (m + 1, W) if store_all else (k + 1, W)
    rows = np.zeros(shape, dtype=np.uint64)
    if m < k or n < k:
        return rows
    row_fb, row_fa, row_cache, cache_rows = _prepare_rows(problem, idx)
    scratch = np.zeros(W, dtype=np.uint64)
    _kernels.tabulation_rows(
        m,
        n,
        k,
        table.b,
        table.entries,
        idx.s_start,
        row_fb,
        row_fa,
        row_cache,
        cache_rows,
        rows,
        store_all,
        scratch,
    )
    return rows


def bit_rows(problem: Problem, idx: MatchIndex, table: BlockTable) -> np.ndarray:
    """All m+1 packed increment rows, for bit-level cross-checks."""
    return _run_kernel(problem, idx, table, store_all=True)


def _scan_left(row: np.ndarray, c: int) -> int:
    """Largest set bit position <= c, assuming one exists."""
    w = c >> 6
    x = int(row[w]) & ((2 << (c & 63)) - 1)
    while x == 0:
        w -= 1
        x = int(row[w])
    return (w << 6) + x.bit_length() - 1


def _prefix_value(row: np.ndarray, j: int) -> int:
    """Value at column j: popcount of bits 1..j (bit 0 is never set)."""
    if j < 0:
        return 0
    w = j >> 6
    total = int(np.bitwise_count(row[:w]).sum())
    total += ((int(row[w]) & ((2 << (j & 63)) - 1))).bit_count()
    return total


def _column_chain(problem: Problem, rows: np.ndarray, length: int) -> list[int]:
    """Candidate end columns, walked over rows spaced k apart.

    Each returned column is the exact leftmost column reaching its rank in
    the corresponding walked row; whether all of them embed into a single
    chain is checked by the row assignment afterwards.
    """
    k = problem.k
    cols: list[int] = []
    r, c = problem.m, problem.n
    for _ in range(length):
        j = _scan_left(rows[r], c)
        cols.append(j)
        r -= k
        c = j - k
    cols.reverse()
    return cols


def _assign_rows(
    problem: Problem, idx: MatchIndex, cols: list[int]
) -> list[tuple[int, int]] | None:
    """Greedy earliest-feasible A rows for a column chain, by group id.

    Succeeds whenever any valid row assignment exists (taking the earliest
    usable row never hurts later pairs); returns None otherwise.
    """
    m, k = problem.m, problem.k
    rows_by_gid: dict[int, list[int]] = {}
    for i in range(k, m + 1):
        rows_by_gid.setdefault(idx.row_group_id(i), []).append(i)
    pairs: list[tuple[int, int]] = []
    prev_i = 0
    for j in cols:
        candidates = rows_by_gid.get(idx.col_group_id(j))
        if not candidates:
            return None
        t = bisect_left(candidates, max(k, prev_i + k))
        if t == len(candidates):
            return None
        i = candidates[t]
        pairs.append((i, j))
        prev_i = i
    return pairs


def _backtrack_rows(
    problem: Problem, idx: MatchIndex, rows: np.ndarray, length: int
) -> list[tuple[int, int]]:
    """Value-level backtracking over the stored bit rows; always valid.

    Tracks the value v at (i, j) implicitly: a match cell always satisfies
    the recurrence's match case, so it can be taken outright; otherwise a
    zero bit at (i, j) means the value extends from the left and a set bit
    forces it to come from above.  While v > 0 both indices stay >= k, and
    every step is O(1), so the walk costs O(m + n + k*length).
    """
    k = problem.k
    i, j = problem.m, problem.n
    v = length
    pairs: list[tuple[int, int]] = []
    while v > 0:
        if idx.row_group_id(i) == idx.col_group_id(j):
            pairs.append((i, j))
            i -= k
            j -= k
            v -= 1
        elif (int(rows[i][j >> 6]) >> (j & 63)) & 1 == 0:
            j -= 1
        else:
            i -= 1
    pairs.reverse()
    return pairs


def lcsk_tabulation(
    problem: Problem,
    idx: MatchIndex,
    table: BlockTable | None = None,
    extract: bool = False,
) -> LcskResult:
    """Solve via the block table; with ``extract`` also recover a chain.

    Extraction keeps all rows and walks the last set bit of the final row,
    then the nearest set bit left of (j - k) every k rows up.  A rows are
    assigned to the walked columns greedily by matching group ids; when the
    columns admit no single chain, value-level backtracking recovers one
    instead, so extraction always verifies.
    """
    if table is None:
        table = block_table()
    started = time.perf_counter()
    m, n, k = problem.m, problem.n, problem.k
    rows = _run_kernel(problem, idx, table, store_all=extract)
    final = rows[m] if extract else rows[m % (k + 1)] if m >= k else rows[0]
    length = int(np.bitwise_count(final).sum())
    pairs = None
    if extract:
        pairs = []
        if length > 0:
            cols = _column_chain(problem, rows, length)
            pairs = _assign_rows(problem, idx, cols)
            if pairs is None:
                # the walked columns are exact rank thresholds, yet they are
                # not always simultaneously realizable as one chain; recover
                # through plain value backtracking in that case
                pairs = _backtrack_rows(problem, idx, rows, length)
    return timed_result(length, pairs, "tab", started)
