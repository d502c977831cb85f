"""Longest common subsequence in k-length substrings (LCSk).

Four solvers over a shared suffix-array match index, plus oracles for
validation, solution verification, and a CLI with a bench harness.
"""

from .core import (
    ALGORITHMS,
    LcskResult,
    Problem,
    lcsk,
    validate,
    verify_solution,
)
from .dense import lcsk_dense
from .dp import lcsk_dp
from .index import MatchIndex, build_match_index
from .oracle import oracle_dp, oracle_exhaustive
from .sparse import lcsk_sparse
from .tabulation import BlockTable, build_block_table, lcsk_tabulation

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BlockTable",
    "LcskResult",
    "MatchIndex",
    "Problem",
    "build_block_table",
    "build_match_index",
    "lcsk",
    "lcsk_dense",
    "lcsk_dp",
    "lcsk_sparse",
    "lcsk_tabulation",
    "oracle_dp",
    "oracle_exhaustive",
    "validate",
    "verify_solution",
    "__version__",
]
