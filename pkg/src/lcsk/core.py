"""Problem/result types, input validation, solution verification and dispatch.

Conventions used across the package:

* Sequences ``a`` (length m) and ``b`` (length n) are 1-based in every
  public contract.  A *k-string* is a substring of length exactly k and is
  identified by its END position, so the k-string ending at ``i`` is
  ``a[i-k:i]`` in Python slicing.
* A *match* is a cell ``(i, j)`` with ``a[i-k:i] == b[j-k:j]``.
* A solution is a chain of matches whose end positions advance by at least
  k in both sequences; its length is the number of pairs.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass

ALGORITHMS = ("dp", "sparse", "dense", "tab", "oracle")

#: symbols must fit a byte-sized alphabet
MAX_SYMBOL = 255


@dataclass(frozen=True)
class Problem:
    """A validated instance: two sequences and the k-string length."""

    a: str
    b: str
    k: int

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class LcskResult:
    """Solver output: length, optional end-position pairs, timing metadata.

    ``pairs`` holds 1-based END positions ``(i, j)`` of each chosen k-string
    in ``a`` and ``b``; it is ``None`` when extraction was not requested and
    an empty tuple for a zero-length solution with extraction on.
    ``elapsed`` is the solver wall time in seconds, excluding shared
    preprocessing (match index / block table construction).
    """

    length: int
    pairs: tuple[tuple[int, int], ...] | None
    algorithm: str
    elapsed: float


def validate(a: str, b: str, k: int) -> Problem:
    """Validate raw inputs and return a Problem.

    Degenerate instances are legal: empty sequences or k > min(m, n) simply
    make every solver return 0.  Raises ValueError for k < 1 or symbols that
    do not fit a byte-sized alphabet.
    """
    if not isinstance(k, int) or isinstance(k, bool):
        raise ValueError("k must be an integer >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    for name, seq in (("a", a), ("b", b)):
        if not isinstance(seq, str):
            raise ValueError(f"sequence {name} must be a str")
        if seq and max(map(ord, seq)) > MAX_SYMBOL:
            raise ValueError(
                f"sequence {name} contains symbols outside the byte-sized alphabet"
            )
    return Problem(a=a, b=b, k=k)


def verify_solution(problem: Problem, result: LcskResult) -> bool:
    """Check a result with pairs against every solution invariant.

    Verifies pair count against the reported length, the global upper bound
    ``length <= min(m//k, n//k)``, in-range end positions, non-overlap in
    BOTH sequences (both coordinates advance by >= k) and k-string equality
    by direct substring comparison.  Returns False on any violation.
    """
    if result.pairs is None:
        raise ValueError("verify_solution requires a result with pairs")
    a, b, k = problem.a, problem.b, problem.k
    m, n = problem.m, problem.n
    pairs = list(result.pairs)
    if result.length != len(pairs):
        return False
    if result.length > min(m // k, n // k):
        return False
    prev_i = prev_j = 0
    for i, j in pairs:
        if not (k <= i <= m and k <= j <= n):
            return False
        if prev_i and (i < prev_i + k or j < prev_j + k):
            return False
        if a[i - k:i] != b[j - k:j]:
            return False
        prev_i, prev_j = i, j
    return True


def auto_algorithm(problem: Problem, match_count: int) -> str:
    """Pick sparse or tab from the match count r.

    Sparse wins when ``r * log2(n/k + 2) < m*n/32`` (n read as max(m, n)),
    i.e. when the match-visiting cost undercuts blockwise row processing.
    The constant is a bench-calibrated heuristic, not a sharp bound.
    """
    m, n, k = problem.m, problem.n, problem.k
    nn = max(m, n)
    if match_count * math.log2(nn / k + 2) < m * n / 32:
        return "sparse"
    return "tab"


def lcsk(
    problem: Problem,
    algo: str = "auto",
    extract: bool = False,
    block_width: int = 6,
) -> LcskResult:
    """Solve an instance with the chosen algorithm.

    ``algo`` is one of dp, sparse, dense, tab, oracle or auto; auto selects
    sparse or tab based on the instance's match count.  With ``extract`` the
    result carries end-position pairs that pass :func:`verify_solution`.
    ``block_width`` only affects the tabulation algorithm.
    """
    from . import dense, dp, index, oracle, sparse, tabulation

    if algo not in ALGORITHMS + ("auto",):
        raise ValueError(f"unknown algorithm {algo!r}")
    if algo == "oracle":
        result = oracle.oracle_dp(problem)
        if not extract:
            result = dataclasses.replace(result, pairs=None)
        return result

    idx = index.build_match_index(problem)
    if algo == "auto":
        algo = auto_algorithm(problem, idx.match_count)
    if algo == "dp":
        return dp.lcsk_dp(problem, idx, extract=extract)
    if algo == "sparse":
        return sparse.lcsk_sparse(problem, idx, extract=extract)
    if algo == "dense":
        return dense.lcsk_dense(problem, idx, extract=extract)
    table = tabulation.block_table(block_width)
    return tabulation.lcsk_tabulation(problem, idx, table, extract=extract)


def timed_result(
    length: int,
    pairs: list[tuple[int, int]] | None,
    algorithm: str,
    started: float,
) -> LcskResult:
    """Assemble an LcskResult, stamping elapsed time since ``started``."""
    return LcskResult(
        length=length,
        pairs=None if pairs is None else tuple(pairs),
        algorithm=algorithm,
        elapsed=time.perf_counter() - started,
    )
