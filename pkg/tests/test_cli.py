import csv
import json
import subprocess
import sys

import pytest

from citevalid.cli import main
from citevalid.normalization import indicators_csv, parse_indicators_csv
from conftest import F1


def f1_args(*extra, ratings=True):
    args = ["--papers", str(F1 / "papers.csv"), "--citations", str(F1 / "citations.csv")]
    if ratings:
        args += ["--ratings", str(F1 / "ratings.csv")]
    return args + list(extra)


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def synth42(tmp_path):
    out = tmp_path / "s42"
    assert main(["synth", "--seed", "42", "--out", str(out)]) == 0
    return out


def corpus_args(folder):
    return ["--papers", str(folder / "papers.csv"), "--citations", str(folder / "citations.csv"),
            "--ratings", str(folder / "ratings.csv")]


def test_synth_deterministic(tmp_path, synth42):
    again = tmp_path / "again"
    assert main(["synth", "--seed", "42", "--out", str(again)]) == 0
    for name in ("papers.csv", "citations.csv", "ratings.csv", "truth.csv"):
        assert (again / name).read_bytes() == (synth42 / name).read_bytes()


def test_synth_requires_seed(tmp_path, capsys):
    assert main(["synth", "--out", str(tmp_path)]) == 1
    assert "--seed" in capsys.readouterr().err


def test_synth_invalid_config(tmp_path):
    assert main(["synth", "--seed", "1", "--rating-fraction", "0", "--out", str(tmp_path)]) == 1
    assert main(["synth", "--seed", "1", "--category", "nonsense", "--out", str(tmp_path)]) == 1


def test_synth_rated_count(tmp_path):
    out = tmp_path / "small"
    assert main(["synth", "--seed", "3", "--n-papers", "100", "--rating-fraction", "0.1",
                 "--category", "cell biology=2.3", "--category", "immunology=1.87",
                 "--out", str(out)]) == 0
    rated = {r["paper_id"] for r in read_csv(out / "ratings.csv")}
    assert len(rated) == 10
    assert {r["categories"] for r in read_csv(out / "papers.csv")} == {"cell biology", "immunology"}


def test_indicators(tmp_path):
    assert main(["indicators", *f1_args(ratings=False), "--census-year", "2010",
                 "--jcr-year", "2010", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "indicators.csv")
    assert len(rows) == 24
    assert list(rows[0])[:2] == ["paper_id", "times_cited"]
    p01 = next(r for r in rows if r["paper_id"] == "P01")
    assert p01["times_cited"] == "6"
    p08 = next(r for r in rows if r["paper_id"] == "P08")
    assert p08["second_gen_per_citing"] == ""
    # reload and re-emit: identical
    text = (tmp_path / "indicators.csv").read_text(encoding="utf-8")
    assert indicators_csv(parse_indicators_csv(text)) == text


def test_indicators_census_before_all_citations(tmp_path):
    assert main(["indicators", *f1_args(), "--census-year", "2000", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "indicators.csv")
    assert all(r["times_cited"] == "0" for r in rows)
    assert all(r["percentile"] in ("100.0", "") for r in rows)
    assert sum(r["percentile"] == "" for r in rows) == 1  # P12 is doc type "other"


def test_ffa(tmp_path):
    assert main(["ffa", *f1_args(), "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "ffa.csv")
    got = {r["paper_id"]: int(r["ffa"]) for r in rows}
    assert got["P01"] == 13 and got["P06"] == 13 and got["P07"] == 7 and len(got) == 14


def test_ffa_needs_ratings(tmp_path):
    assert main(["ffa", *f1_args(ratings=False), "--out", str(tmp_path)]) == 1


def test_validate_synthetic(tmp_path, synth42, capsys):
    out = tmp_path / "v"
    assert main(["validate", *corpus_args(synth42), "--alpha", "0.05", "--out", str(out)]) == 0
    plot = read_csv(out / "plot_data.csv")
    assert len(plot) == 7
    assert list(plot[0]) == ["metric", "n", "r_s", "ci_low", "ci_high", "p", "significant", "effect"]
    report = json.loads((out / "report.json").read_text())
    assert report["config"]["alpha_adjusted"] == 0.05 / 7
    assert "0.05/7 = 0.007" in capsys.readouterr().out

    out2 = tmp_path / "v2"
    assert main(["validate", *corpus_args(synth42), "--alpha", "0.05", "--out", str(out2)]) == 0
    for name in ("report.json", "plot_data.csv", "report.txt"):
        assert (out / name).read_bytes() == (out2 / name).read_bytes()


def test_validate_too_few_rated(tmp_path):
    (tmp_path / "r.csv").write_text("paper_id,rater_id,score\nP01,R1,6\nP02,R1,8\n")
    args = ["validate", "--papers", str(F1 / "papers.csv"), "--citations",
            str(F1 / "citations.csv"), "--ratings", str(tmp_path / "r.csv"), "--out", str(tmp_path)]
    assert main(args) == 1


def test_io_error_exit_code(tmp_path, capsys):
    args = ["check", "--papers", str(tmp_path / "missing.csv"), "--citations",
            str(F1 / "citations.csv")]
    assert main(args) == 2
    assert "I/O error" in capsys.readouterr().err


def test_check(tmp_path, capsys):
    assert main(["check", *f1_args()]) == 0
    out = capsys.readouterr().out
    assert "duplicate edges removed: 1" in out and "OK" in out

    bad = tmp_path / "c.csv"
    bad.write_text("citing_id,cited_id\nP01,NOPE\n")
    assert main(["check", "--papers", str(F1 / "papers.csv"), "--citations", str(bad)]) == 1
    assert "NOPE" in capsys.readouterr().err


def test_usage_error_is_exit_1(capsys):
    assert main(["frobnicate"]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "citevalid", "check", *f1_args()],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "OK" in proc.stdout
