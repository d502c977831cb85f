from __future__ import annotations

import csv
import io
import json

import pytest

from lcsk import validate, verify_solution
from lcsk.core import LcskResult
from lcsk.cli import (
    INPUT_ERROR,
    SELFTEST_FAILURE,
    USAGE_ERROR,
    bench,
    default_solvers,
    main,
    selftest,
)


def run_main(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


class TestRun:
    def test_json_schema_and_roundtrip(self, capsys):
        code, out, _ = run_main(
            ["run", "--a", "abab", "--b", "abab", "-k", "2",
             "--algo", "dp", "--extract", "--json"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["m"] == 4 and doc["n"] == 4 and doc["k"] == 2
        assert doc["algorithm"] == "dp"
        assert doc["length"] == 2
        assert doc["pairs"] == [[2, 2], [4, 4]]
        assert doc["elapsed_ms"] >= 0
        # re-verify the emitted pairs against the input
        p = validate("abab", "abab", 2)
        rebuilt = LcskResult(
            length=doc["length"],
            pairs=tuple(tuple(pair) for pair in doc["pairs"]),
            algorithm=doc["algorithm"],
            elapsed=0.0,
        )
        assert verify_solution(p, rebuilt)

    def test_k_zero_is_usage_error(self, capsys):
        code, _, _ = run_main(["run", "--a", "abc", "--b", "abc", "-k", "0"], capsys)
        assert code == USAGE_ERROR

    def test_missing_file_is_input_error(self, tmp_path, capsys):
        present = tmp_path / "x.txt"
        present.write_text("abc\n")
        code, _, err = run_main(
            ["run", "--file-a", str(present), "--file-b",
             str(tmp_path / "missing.txt"), "-k", "3"],
            capsys,
        )
        assert code == INPUT_ERROR
        assert "missing.txt" in err

    def test_file_inputs_drop_one_trailing_newline(self, tmp_path, capsys):
        fa = tmp_path / "a.txt"
        fb = tmp_path / "b.txt"
        fa.write_text("abab\n")
        fb.write_text("abab\n")
        code, out, _ = run_main(
            ["run", "--file-a", str(fa), "--file-b", str(fb), "-k", "2", "--json"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["m"] == 4

    def test_fasta_first_two_records(self, tmp_path, capsys):
        fasta = tmp_path / "seqs.fa"
        fasta.write_text(">one\nab\nab\n>two desc\nabab\n>three\nzzzz\n")
        code, out, _ = run_main(
            ["run", "--fasta", str(fasta), "-k", "2", "--json"], capsys
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["m"] == 4 and doc["n"] == 4 and doc["length"] == 2

    def test_stdin_two_line_mode(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("abab\nbab\n"))
        code, out, _ = run_main(["run", "--a", "-", "-k", "2", "--json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert (doc["m"], doc["n"], doc["length"]) == (4, 3, 1)

    def test_requires_exactly_one_source(self, capsys):
        code, _, _ = run_main(["run", "-k", "2"], capsys)
        assert code == USAGE_ERROR
        code, _, _ = run_main(
            ["run", "--a", "x", "--b", "x", "--fasta", "f", "-k", "1"], capsys
        )
        assert code == USAGE_ERROR

    def test_block_width_only_for_tab(self, capsys):
        code, _, _ = run_main(
            ["run", "--a", "ab", "--b", "ab", "-k", "1",
             "--algo", "dp", "--block-width", "5"],
            capsys,
        )
        assert code == USAGE_ERROR

    def test_invalid_symbols_are_input_error(self, capsys):
        # files are read as latin-1 bytes, but inline args can smuggle wide
        # symbols that the byte-sized alphabet rejects
        code, _, err = run_main(
            ["run", "--a", "abμ", "--b", "ab", "-k", "1"], capsys
        )
        assert code == INPUT_ERROR
        assert "byte-sized" in err

    def test_text_output(self, capsys):
        code, out, _ = run_main(
            ["run", "--a", "abab", "--b", "abab", "-k", "2", "--extract"], capsys
        )
        assert code == 0
        assert "length: 2" in out
        assert "pairs: (2,2) (4,4)" in out


class TestSelftest:
    def test_small_run_passes(self, capsys):
        assert selftest(40, seed=42, max_n=24, alphabet_sizes=[2, 4, 20],
                        k_range=(1, 8)) == 0
        out, _ = capsys.readouterr()
        assert "selftest ok: 40 cases" in out

    def test_zero_cases(self, capsys):
        assert selftest(0, 0, 16, [2], (1, 2)) == 0
        out, _ = capsys.readouterr()
        assert "0 cases" in out

    def test_corrupted_solver_detected(self, capsys):
        solvers = default_solvers()
        good_dp = solvers["dp"]

        def corrupted(p, idx, extract):
            res = good_dp(p, idx, extract)
            return LcskResult(res.length + 1, res.pairs, res.algorithm, res.elapsed)

        solvers["dp"] = corrupted
        code = selftest(200, seed=7, max_n=16, alphabet_sizes=[2],
                        k_range=(1, 3), solvers=solvers)
        out, _ = capsys.readouterr()
        assert code == SELFTEST_FAILURE
        assert "reproducer: seed=7" in out

    def test_identical_seed_identical_stream(self, capsys):
        buf1, buf2 = io.StringIO(), io.StringIO()
        assert selftest(25, 9, 20, [2, 4], (1, 4), out=buf1) == 0
        assert selftest(25, 9, 20, [2, 4], (1, 4), out=buf2) == 0
        assert buf1.getvalue() == buf2.getvalue()

    def test_max_n_guard(self, capsys):
        code, _, _ = run_main(["selftest", "--max-n", "1000"], capsys)
        assert code == USAGE_ERROR


class TestBench:
    def test_row_count_contract(self):
        buf = io.StringIO()
        assert bench([64], sigma=4, k=2, algos=["dp", "sparse"], repeat=1,
                     seed=0, out=buf) == 0
        rows = list(csv.reader(io.StringIO(buf.getvalue())))
        header, data = rows[0], rows[1:]
        assert header == ["algo", "m", "n", "k", "sigma", "r", "length",
                          "mean_ms", "stddev_ms", "peak_mem_estimate"]
        assert len(data) == 2
        assert [row[0] for row in data] == ["dp", "sparse"]

    def test_lengths_agree_across_algos(self):
        buf = io.StringIO()
        bench([48, 96], sigma=2, k=3, algos=["dp", "sparse", "dense", "tab", "oracle"],
              repeat=1, seed=3, out=buf)
        rows = list(csv.reader(io.StringIO(buf.getvalue())))[1:]
        by_size: dict[str, set[str]] = {}
        for row in rows:
            by_size.setdefault(row[1], set()).add(row[6])
        assert all(len(lengths) == 1 for lengths in by_size.values())

    def test_size_range_doubles(self, capsys):
        code, out, _ = run_main(
            ["bench", "--sizes", "16..64", "--algos", "dp", "--repeat", "1"], capsys
        )
        assert code == 0
        sizes = [row.split(",")[1] for row in out.strip().splitlines()[1:]]
        assert sizes == ["16", "32", "64"]

    def test_unknown_algo_rejected(self, capsys):
        code, _, _ = run_main(["bench", "--algos", "qp"], capsys)
        assert code == USAGE_ERROR


def test_help_runs(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
