"""Command-line behavior: subcommands, exit codes, record integrity."""

from __future__ import annotations

import csv
import json

import evenbisect as eb
from evenbisect.cli import (
    CSV_COLUMNS,
    EXIT_EMPTY_CORPUS,
    EXIT_ERROR,
    EXIT_NOT_FREE,
    EXIT_OK,
    EXIT_SIZE_GUARD,
    main,
)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_polarity(tmp_path, capsys):
    out = tmp_path / "er7.txt"
    code, stdout, _ = run(["gen", "polarity", "--q", "7", "--out", str(out)], capsys)
    assert code == EXIT_OK
    g = eb.load_graph(out)
    assert g.n == 57 and g.m == 224
    assert "n=57" in stdout


def test_gen_classic_and_random(tmp_path, capsys):
    out = tmp_path / "petersen.txt"
    code, _, _ = run(["gen", "classic", "--name", "petersen", "--out", str(out)], capsys)
    assert code == EXIT_OK
    assert eb.load_graph(out).m == 15

    out_a = tmp_path / "a.txt"
    out_b = tmp_path / "b.txt"
    args = ["gen", "random-free", "--n", "40", "--m", "80", "--k", "2", "--seed", "1"]
    assert run(args + ["--out", str(out_a)], capsys)[0] == EXIT_OK
    assert run(args + ["--out", str(out_b)], capsys)[0] == EXIT_OK
    assert out_a.read_text() == out_b.read_text()  # reproducible per seed


def test_gen_incidence_plane(tmp_path, capsys):
    out = tmp_path / "plane3.txt"
    code, _, _ = run(["gen", "incidence-plane", "--q", "3", "--out", str(out)], capsys)
    assert code == EXIT_OK
    g = eb.load_graph(out)
    assert g.n == 26 and g.m == 52


def test_gen_rejects_bad_order(tmp_path, capsys):
    code, _, err = run(["gen", "polarity", "--q", "4", "--out", str(tmp_path / "x.txt")], capsys)
    assert code == EXIT_ERROR
    assert "prime" in err


def test_bisect_record_fields(tmp_path, capsys):
    path = tmp_path / "er3.txt"
    run(["gen", "polarity", "--q", "3", "--out", str(path)], capsys)
    code, stdout, _ = run(["bisect", str(path), "--k", "2", "--trials", "50"], capsys)
    assert code == EXIT_OK
    record = json.loads(stdout)
    assert record["family"] == "polarity"
    assert record["n"] == 13 and record["m"] == 24
    assert record["beta"] > 0
    assert record["surplus"] == record["achieved"] - record["m_half"]
    assert record["oracle_optimum"] >= record["achieved"]
    assert record["schema_version"] == 1


def test_bisect_verify_free_detects_square(tmp_path, capsys):
    path = tmp_path / "k4.txt"
    run(["gen", "classic", "--name", "complete", "--size", "4", "--out", str(path)], capsys)
    code, _, err = run(["bisect", str(path), "--k", "2", "--verify-free"], capsys)
    assert code == EXIT_NOT_FREE
    assert "cycle on 4 vertices" in err


def test_bisect_verify_free_passes_petersen(tmp_path, capsys):
    path = tmp_path / "petersen.txt"
    run(["gen", "classic", "--name", "petersen", "--out", str(path)], capsys)
    code, stdout, _ = run(["bisect", str(path), "--k", "2", "--trials", "20",
                           "--verify-free"], capsys)
    assert code == EXIT_OK
    assert json.loads(stdout)["achieved"] >= 8


def test_verify_free_subcommand(tmp_path, capsys):
    path = tmp_path / "heawood.txt"
    run(["gen", "classic", "--name", "heawood", "--out", str(path)], capsys)
    assert run(["verify-free", str(path), "--k", "2"], capsys)[0] == EXIT_OK
    assert run(["verify-free", str(path), "--k", "3"], capsys)[0] == EXIT_NOT_FREE


def test_oracle_command(tmp_path, capsys):
    path = tmp_path / "k33.txt"
    run(["gen", "complete-bipartite", "--a", "3", "--b", "3", "--out", str(path)], capsys)
    code, stdout, _ = run(["oracle", str(path)], capsys)
    assert code == EXIT_OK
    assert json.loads(stdout)["optimum"] == 9
    code, stdout, _ = run(["oracle", str(path), "--cut"], capsys)
    assert json.loads(stdout)["optimum"] == 9
    petersen = tmp_path / "petersen.txt"
    run(["gen", "classic", "--name", "petersen", "--out", str(petersen)], capsys)
    _, stdout, _ = run(["oracle", str(petersen)], capsys)
    assert json.loads(stdout)["optimum"] == 11
    _, stdout, _ = run(["oracle", str(petersen), "--cut"], capsys)
    assert json.loads(stdout)["optimum"] == 12


def test_oracle_size_guard(tmp_path, capsys):
    path = tmp_path / "big.txt"
    eb.save_graph(eb.classic("cycle", 30), path)
    code, _, err = run(["oracle", str(path)], capsys)
    assert code == EXIT_SIZE_GUARD
    assert "refuses" in err


def test_bench_deterministic_and_summary(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    run(["gen", "polarity", "--q", "3", "--out", str(corpus / "er3.txt")], capsys)
    run(["gen", "polarity", "--q", "5", "--out", str(corpus / "er5.txt")], capsys)
    run(["gen", "classic", "--name", "petersen", "--out", str(corpus / "petersen.txt")], capsys)

    csv1 = tmp_path / "run1.csv"
    code, stdout, _ = run(["bench", str(corpus), "--k", "2", "--trials", "40",
                           "--out", str(csv1)], capsys)
    assert code == EXIT_OK
    summary = json.loads(stdout)
    assert summary["graphs"] == 3
    assert summary["violations"] == {"balance": 0, "recount": 0, "oracle": 0}
    assert summary["families"]["polarity"]["min_beta"] > 0

    csv2 = tmp_path / "run2.csv"
    run(["bench", str(corpus), "--k", "2", "--trials", "40", "--out", str(csv2)], capsys)
    assert csv1.read_bytes() == csv2.read_bytes()

    with open(csv1) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    er3_row = next(r for r in rows if r["graph_id"] == "er3")
    assert er3_row["oracle_optimum"] != ""
    assert float(er3_row["beta"]) > 0
    er5_row = next(r for r in rows if r["graph_id"] == "er5")
    assert er5_row["oracle_optimum"] == ""  # n=31 above the auto-oracle cap


def test_bench_empty_corpus(tmp_path, capsys):
    empty = tmp_path / "none"
    empty.mkdir()
    code, _, err = run(["bench", str(empty)], capsys)
    assert code == EXIT_EMPTY_CORPUS
    assert "no *.txt graphs" in err


def test_bisect_csv_append(tmp_path, capsys):
    path = tmp_path / "c9.txt"
    run(["gen", "classic", "--name", "cycle", "--size", "9", "--out", str(path)], capsys)
    out_csv = tmp_path / "records.csv"
    for _ in range(2):
        code, _, _ = run(["bisect", str(path), "--k", "2", "--trials", "20",
                          "--out", str(out_csv)], capsys)
        assert code == EXIT_OK
    with open(out_csv) as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 3  # header + two appended records
    assert rows[1] == rows[2]


def test_unreadable_path_and_usage_errors(capsys):
    assert run(["bisect", "/nonexistent/file.txt"], capsys)[0] == EXIT_ERROR
    assert run(["definitely-not-a-command"], capsys)[0] == EXIT_ERROR
    assert run(["--help"], capsys)[0] == EXIT_OK


def test_bench_with_corrupt_graph_file(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "bad.txt").write_text("2 2\n0 1\n0 1\n")  # duplicate edge
    code, _, err = run(["bench", str(corpus)], capsys)
    assert code == EXIT_ERROR
    assert "duplicate" in err
