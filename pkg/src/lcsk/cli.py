"""Command-line front end: solve, cross-check, and benchmark.

Exit codes: 0 success, 1 usage error, 2 unreadable or invalid input,
3 selftest disagreement.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import statistics
import sys
import time
import tracemalloc
from typing import Callable, TextIO

from . import dense, dp, index, oracle, sparse, tabulation
from .core import ALGORITHMS, LcskResult, Problem, lcsk, validate, verify_solution

USAGE_ERROR = 1
INPUT_ERROR = 2
SELFTEST_FAILURE = 3

SELFTEST_MAX_N = 512
_FIRST_SYMBOL = 33  # '!': printable, keeps sigma <= 223 inside the byte alphabet


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="lcsk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve one instance")
    run.add_argument("--a", help="sequence A inline, or '-' to read A and B from stdin")
    run.add_argument("--b", help="sequence B inline")
    run.add_argument("--file-a", help="file containing sequence A")
    run.add_argument("--file-b", help="file containing sequence B")
    run.add_argument("--fasta", help="FASTA file; first two records are A and B")
    run.add_argument("-k", type=int, required=True, help="k-string length")
    run.add_argument("--algo", default="auto", choices=ALGORITHMS + ("auto",))
    run.add_argument("--extract", action="store_true", help="also report pairs")
    run.add_argument("--json", action="store_true", help="JSON output")
    run.add_argument(
        "--block-width",
        type=int,
        default=None,
        help="snippet width for the tabulation algorithm (4..8, default 6)",
    )

    st = sub.add_parser("selftest", help="cross-check all solvers on random instances")
    st.add_argument("--cases", type=int, default=1000)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--max-n", type=int, default=64)
    st.add_argument("--alphabet-sizes", default="2,4,20", help="comma-separated sigmas")
    st.add_argument("--k-min", type=int, default=1)
    st.add_argument("--k-max", type=int, default=8)

    bench = sub.add_parser("bench", help="time solvers on random instances, CSV output")
    bench.add_argument("--sizes", default="1024,2048,4096",
                       help="comma list, or lo..hi to double from lo to hi")
    bench.add_argument("--sigma", type=int, default=4)
    bench.add_argument("-k", type=int, default=3)
    bench.add_argument("--algos", default="dp,sparse,tab")
    bench.add_argument("--repeat", type=int, default=3)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--block-width", type=int, default=None)
    return parser


# ---------------------------------------------------------------- run


def _read_text_file(path: str) -> str:
    with open(path, "r", encoding="latin-1") as fh:
        content = fh.read()
    if content.endswith("\n"):
        content = content[:-1]
    return content


def _read_fasta(path: str) -> tuple[str, str]:
    records: list[str] = []
    with open(path, "r", encoding="latin-1") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith(">"):
                if len(records) == 2:
                    break
                records.append("")
            elif records:  # text before the first header is ignored
                records[-1] += line.strip()
    if len(records) < 2:
        raise ValueError(f"{path}: expected at least two FASTA records")
    return records[0], records[1]


def _resolve_input(args, parser: _Parser) -> tuple[str, str]:
    stdin_mode = args.a == "-"
    inline = args.a is not None and not stdin_mode
    files = args.file_a is not None or args.file_b is not None
    fasta = args.fasta is not None
    chosen = sum([inline or stdin_mode, files, fasta])
    if chosen != 1:
        parser.error("exactly one input source required: --a/--b, --file-a/--file-b, or --fasta")
    if stdin_mode:
        lines = sys.stdin.read().split("\n")
        if len(lines) < 2:
            raise ValueError("stdin mode needs two lines: A then B")
        return lines[0], lines[1]
    if inline:
        if args.b is None:
            parser.error("--a requires --b")
        return args.a, args.b
    if files:
        if args.file_a is None or args.file_b is None:
            parser.error("--file-a and --file-b must be given together")
        return _read_text_file(args.file_a), _read_text_file(args.file_b)
    return _read_fasta(args.fasta)


def _print_result(problem: Problem, result: LcskResult, as_json: bool, out: TextIO):
    elapsed_ms = result.elapsed * 1000.0
    if as_json:
        doc = {
            "m": problem.m,
            "n": problem.n,
            "k": problem.k,
            "algorithm": result.algorithm,
            "length": result.length,
            "elapsed_ms": elapsed_ms,
        }
        if result.pairs is not None:
            doc["pairs"] = [[i, j] for i, j in result.pairs]
        print(json.dumps(doc), file=out)
    else:
        print(f"length: {result.length}", file=out)
        if result.pairs is not None:
            shown = " ".join(f"({i},{j})" for i, j in result.pairs)
            print(f"pairs: {shown}", file=out)
        print(f"algorithm: {result.algorithm}", file=out)
        print(f"elapsed: {elapsed_ms:.3f} ms", file=out)


def _cmd_run(args, parser: _Parser, out: TextIO) -> int:
    if args.k < 1:
        parser.error("k must be >= 1")
    if args.block_width is not None and args.algo not in ("tab", "auto"):
        parser.error("--block-width only applies to the tab or auto algorithm")
    try:
        a, b = _resolve_input(args, parser)
    except (OSError, ValueError) as exc:
        print(f"lcsk: {exc}", file=sys.stderr)
        return INPUT_ERROR
    try:
        problem = validate(a, b, args.k)
    except ValueError as exc:
        print(f"lcsk: {exc}", file=sys.stderr)
        return INPUT_ERROR
    block_width = args.block_width or tabulation.DEFAULT_BLOCK_WIDTH
    result = lcsk(problem, algo=args.algo, extract=args.extract, block_width=block_width)
    _print_result(problem, result, args.json, out)
    return 0


# ---------------------------------------------------------------- selftest


Solver = Callable[[Problem, index.MatchIndex, bool], LcskResult]


def default_solvers() -> dict[str, Solver]:
    return {
        "dp": lambda p, idx, extract: dp.lcsk_dp(p, idx, extract=extract),
        "sparse": lambda p, idx, extract: sparse.lcsk_sparse(p, idx, extract=extract),
        "dense": lambda p, idx, extract: dense.lcsk_dense(p, idx, extract=extract),
        "tab": lambda p, idx, extract: tabulation.lcsk_tabulation(
            p, idx, tabulation.block_table(), extract=extract
        ),
    }


def random_sequence(rng: random.Random, length: int, sigma: int) -> str:
    return "".join(chr(_FIRST_SYMBOL + rng.randrange(sigma)) for _ in range(length))


def selftest(
    cases: int,
    seed: int,
    max_n: int,
    alphabet_sizes: list[int],
    k_range: tuple[int, int],
    solvers: dict[str, Solver] | None = None,
    out: TextIO | None = None,
) -> int:
    """Cross-check every solver against the oracle on seeded random instances.

    The seed fully determines the instance stream.  Returns 0 when all
    lengths agree and every extraction verifies, else prints a minimal
    reproducer and returns 3.
    """
    if out is None:
        out = sys.stdout
    if solvers is None:
        solvers = default_solvers()
    rng = random.Random(seed)
    for case in range(cases):
        sigma = rng.choice(alphabet_sizes)
        m = rng.randint(0, max_n)
        n = rng.randint(0, max_n)
        k = rng.randint(*k_range)
        problem = validate(
            random_sequence(rng, m, sigma), random_sequence(rng, n, sigma), k
        )
        idx = index.build_match_index(problem)
        want = oracle.oracle_dp(problem)
        failures = []
        for name, solve in solvers.items():
            got = solve(problem, idx, True)
            if got.length != want.length:
                failures.append(f"{name}: length {got.length} != oracle {want.length}")
            elif not verify_solution(problem, got):
                failures.append(f"{name}: extraction failed verification")
        if not verify_solution(problem, want):
            failures.append("oracle: extraction failed verification")
        if failures:
            print(f"FAIL case {case}: " + "; ".join(failures), file=out)
            print(
                f"reproducer: seed={seed} case={case} k={k} a={problem.a!r} b={problem.b!r}",
                file=out,
            )
            return SELFTEST_FAILURE
    print(f"selftest ok: {cases} cases", file=out)
    return 0


def _cmd_selftest(args, parser: _Parser, out: TextIO) -> int:
    if args.max_n > SELFTEST_MAX_N:
        parser.error(f"--max-n is capped at {SELFTEST_MAX_N}")
    if args.cases < 0 or args.k_min < 1 or args.k_max < args.k_min:
        parser.error("invalid selftest parameters")
    try:
        sigmas = [int(s) for s in args.alphabet_sizes.split(",") if s]
    except ValueError:
        parser.error("--alphabet-sizes must be a comma list of integers")
    return selftest(
        args.cases, args.seed, args.max_n, sigmas, (args.k_min, args.k_max), out=out
    )


# ---------------------------------------------------------------- bench


def _parse_sizes(text: str) -> list[int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        sizes = []
        while lo <= hi:
            sizes.append(lo)
            lo *= 2
        return sizes
    return [int(s) for s in text.split(",") if s]


def bench(
    sizes: list[int],
    sigma: int,
    k: int,
    algos: list[str],
    repeat: int,
    seed: int,
    block_width: int = tabulation.DEFAULT_BLOCK_WIDTH,
    out: TextIO | None = None,
) -> int:
    """Time solvers on one random instance per size; CSV on stdout.

    The match index (and block table) are shared preprocessing, built once
    per instance outside the timed region.  Each (size, algo) cell reports
    mean/stddev over ``repeat`` runs plus a peak-allocation estimate from
    one extra instrumented run.
    """
    if out is None:
        out = sys.stdout
    writer = csv.writer(out)
    writer.writerow(
        ["algo", "m", "n", "k", "sigma", "r", "length",
         "mean_ms", "stddev_ms", "peak_mem_estimate"]
    )
    rng = random.Random(seed)
    table = tabulation.block_table(block_width) if "tab" in algos else None
    solvers = default_solvers()
    # warm compiled kernels so the first timed run is not a compilation run
    warm = validate("ab", "ab", 1)
    dp.lcsk_dp(warm, index.build_match_index(warm), extract=False)
    if table is not None:
        tabulation.lcsk_tabulation(warm, index.build_match_index(warm), table)
    for size in sizes:
        problem = validate(
            random_sequence(rng, size, sigma), random_sequence(rng, size, sigma), k
        )
        idx = index.build_match_index(problem)
        for algo in algos:
            if algo == "oracle":
                call = lambda: oracle.oracle_dp(problem)
            elif algo == "tab":
                call = lambda: tabulation.lcsk_tabulation(problem, idx, table)
            else:
                solve = solvers[algo]
                call = lambda solve=solve: solve(problem, idx, False)
            times = []
            length = 0
            for _ in range(max(1, repeat)):
                t0 = time.perf_counter()
                result = call()
                times.append((time.perf_counter() - t0) * 1000.0)
                length = result.length
            tracemalloc.start()
            call()
            _, peak = tracemalloc.get_traced_memory()
            tracemalloc.stop()
            writer.writerow(
                [algo, problem.m, problem.n, k, sigma, idx.match_count, length,
                 f"{statistics.fmean(times):.3f}",
                 f"{statistics.pstdev(times):.3f}", peak]
            )
    return 0


def _cmd_bench(args, parser: _Parser, out: TextIO) -> int:
    try:
        sizes = _parse_sizes(args.sizes)
    except ValueError:
        parser.error("--sizes must be a comma list or lo..hi")
    algos = [s for s in args.algos.split(",") if s]
    for algo in algos:
        if algo not in ALGORITHMS:
            parser.error(f"unknown algorithm {algo!r}")
    if args.k < 1:
        parser.error("k must be >= 1")
    block_width = args.block_width or tabulation.DEFAULT_BLOCK_WIDTH
    return bench(
        sizes, args.sigma, args.k, algos, args.repeat, args.seed,
        block_width=block_width, out=out,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args, parser, sys.stdout)
        if args.command == "selftest":
            return _cmd_selftest(args, parser, sys.stdout)
        return _cmd_bench(args, parser, sys.stdout)
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
