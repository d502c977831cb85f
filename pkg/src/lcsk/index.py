"""Match-index preprocessing over the concatenation B + separator + A.

The index answers, for any row i of the dynamic program, "which columns j
of B end a k-string equal to A's k-string ending at i" in O(1) per item,
plus logarithmic successor queries.  Construction:

1. suffix array and LCP table of the concatenation (separator is a symbol
   outside the alphabet, placed between B and A),
2. partition of the suffix array into maximal runs with pairwise LCP >= k
   (suffixes in one run share their first k symbols),
3. the S array of (group_id, start_pos) pairs for every suffix whose first
   k symbols lie inside one original sequence, radix-sorted by two stable
   passes (start_pos, then group_id),
4. the X position table mapping a suffix start position to the triple
   (fa_pos, fb_pos, ng_pos): S offsets of the group's first A entry, first
   B entry and first entry of the next group.

Within a group all B entries precede all A entries because B occupies the
lower concatenation positions, so a group's B match columns are one
contiguous, start-sorted slice of S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import Problem


@dataclass
class MatchIndex:
    """Immutable suffix-array-backed index of all k-string matches.

    Positions in ``concat`` are 0-based: B occupies [0, n), the separator
    sits at n, A occupies [n+1, n+1+m).  All query methods speak 1-based
    END positions like the rest of the package.
    """

    m: int
    n: int
    k: int
    concat: np.ndarray        # int32, symbols shifted +1, separator 0
    sa: np.ndarray            # int64 suffix start positions, lex order
    lcp: np.ndarray           # int64, lcp[t] = LCP(sa[t-1], sa[t]), lcp[0] = 0
    s_gid: np.ndarray         # int32 group id per S entry, ids 1..group_count
    s_start: np.ndarray       # int64 start position per S entry
    x_fb: np.ndarray          # int32, -1 where the position has no S entry
    x_fa: np.ndarray
    x_ng: np.ndarray
    x_gid: np.ndarray
    group_count: int
    match_count: int = field(default=0)

    def _row_pos(self, i: int) -> int:
        if not (self.k <= i <= self.m):
            raise ValueError(f"row {i} out of range [{self.k}, {self.m}]")
        return self.n + 1 + (i - self.k)

    def row_match_bounds(self, i: int) -> tuple[int, int]:
        """S offsets [fb, fa) of the B entries matching row i's k-string."""
        p = self._row_pos(i)
        return int(self.x_fb[p]), int(self.x_fa[p])

    def matches_in_row(self, i: int) -> np.ndarray:
        """Ascending END columns j of B with b[j-k:j] == a[i-k:i]."""
        fb, fa = self.row_match_bounds(i)
        return self.s_start[fb:fa] + self.k

    def successor_in_row(self, i: int, jmin: int) -> int | None:
        """Smallest match column >= jmin in row i, or None."""
        fb, fa = self.row_match_bounds(i)
        starts = self.s_start[fb:fa]
        t = int(np.searchsorted(starts, jmin - self.k))
        if t == len(starts):
            return None
        return int(starts[t]) + self.k

    def row_group_id(self, i: int) -> int:
        """Group id of A's row-i k-string; rows share ids iff k-strings equal."""
        return int(self.x_gid[self._row_pos(i)])

    def col_group_id(self, j: int) -> int:
        """Group id of B's k-string ending at column j."""
        if not (self.k <= j <= self.n):
            raise ValueError(f"column {j} out of range [{self.k}, {self.n}]")
        return int(self.x_gid[j - self.k])


def _sequence_codes(seq: str) -> np.ndarray:
    # validated symbols are <= 255, so latin-1 is a faithful byte encoding
    return np.frombuffer(seq.encode("latin-1"), dtype=np.uint8).astype(np.int32) + 1


def build_match_index(problem: Problem) -> MatchIndex:
    """Build the full index; O((m+n) log(m+n)) time, O(m+n) words."""
    a, b, k = problem.a, problem.b, problem.k
    m, n = problem.m, problem.n
    concat = np.empty(m + n + 1, dtype=np.int32)
    concat[:n] = _sequence_codes(b) if n else 0
    concat[n] = 0
    concat[n + 1:] = _sequence_codes(a) if m else 0
    L = len(concat)

    sa = _kernels.suffix_sort(concat)
    rank = np.empty(L, dtype=np.int64)
    rank[sa] = np.arange(L, dtype=np.int64)
    lcp = _kernels.lcp_from_suffix_array(concat, sa, rank)

    # maximal runs with pairwise LCP >= k; suffixes whose first k symbols
    # cross the separator (or fall short of k) are singleton runs and are
    # dropped: they cannot participate in any match
    eligible = (sa + k <= n) | ((sa >= n + 1) & (sa + k <= L))
    run_start = np.empty(L, dtype=bool)
    run_start[0] = True
    np.less(lcp[1:], k, out=run_start[1:])
    run_id = np.cumsum(run_start)

    gids_sa = run_id[eligible]
    starts_sa = sa[eligible]
    if len(gids_sa):
        dense = np.empty(len(gids_sa), dtype=np.int64)
        dense[0] = 1
        np.cumsum(gids_sa[1:] != gids_sa[:-1], out=dense[1:])
        dense[1:] += 1
    else:
        dense = gids_sa
    group_count = int(dense[-1]) if len(dense) else 0

    # radix sort to (group_id, start_pos): two stable counting-sort passes
    perm = _kernels.sort_pairs(dense, starts_sa, L, group_count)
    s_gid = dense[perm].astype(np.int32)
    s_start = starts_sa[perm]

    x_fb = np.full(L, -1, dtype=np.int32)
    x_fa = np.full(L, -1, dtype=np.int32)
    x_ng = np.full(L, -1, dtype=np.int32)
    x_gid = np.full(L, -1, dtype=np.int32)
    match_count = 0
    if len(s_gid):
        heads = np.flatnonzero(np.r_[True, s_gid[1:] != s_gid[:-1]])
        ends = np.r_[heads[1:], len(s_gid)]
        sizes = ends - heads
        in_b = (s_start + k <= n).astype(np.int64)
        b_counts = np.add.reduceat(in_b, heads)
        fa = heads + b_counts
        x_fb[s_start] = np.repeat(heads, sizes).astype(np.int32)
        x_fa[s_start] = np.repeat(fa, sizes).astype(np.int32)
        x_ng[s_start] = np.repeat(ends, sizes).astype(np.int32)
        x_gid[s_start] = s_gid
        match_count = int(((ends - fa) * b_counts).sum())

    return MatchIndex(
        m=m,
        n=n,
        k=k,
        concat=concat,
        sa=sa,
        lcp=lcp,
        s_gid=s_gid,
        s_start=s_start,
        x_fb=x_fb,
        x_fa=x_fa,
        x_ng=x_ng,
        x_gid=x_gid,
        group_count=group_count,
        match_count=match_count,
    )
