import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from blowtree.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pipeline_reproduces_two_vertex(capsys, monkeypatch):
    code, s, _ = run(capsys, monkeypatch, ["new"])
    assert code == 0
    code, s, _ = run(capsys, monkeypatch, ["op", "vertex", "0"], s)
    code, s, _ = run(capsys, monkeypatch, ["op", "vertex", "1"], s)
    assert code == 0
    assert s == (GOLDEN / "two_vertex.state.json").read_text()
    code, table, _ = run(capsys, monkeypatch, ["labels"], s)
    assert code == 0
    assert table == (GOLDEN / "two_vertex.labels.txt").read_text()


def test_files_and_undo(capsys, monkeypatch, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, monkeypatch, ["new", "--out", str(a)])[0] == 0
    assert run(capsys, monkeypatch, ["op", "vertex", "0", "--state", str(a), "--out", str(b)])[0] == 0
    assert run(capsys, monkeypatch, ["op", "edge", "0", "1", "--state", str(b), "--out", str(b)])[0] == 0
    code, table, _ = run(capsys, monkeypatch, ["labels", "--state", str(b)])
    assert table == (GOLDEN / "vertex_edge_chain.labels.txt").read_text()
    code, s, _ = run(capsys, monkeypatch, ["undo", "--state", str(b)])
    assert code == 0 and json.loads(s)["next_id"] == 3 and len(json.loads(s)["vertices"]) == 2


def test_bad_op_is_usage_error(capsys, monkeypatch):
    seed = (GOLDEN / "two_vertex.state.json").read_text()
    code, _, err = run(capsys, monkeypatch, ["op", "edge", "0", "2"], seed)
    assert code == 2 and "error" in err
    code, _, err = run(capsys, monkeypatch, ["op", "vertex", "0", "1"], seed)
    assert code == 2
    code, _, err = run(capsys, monkeypatch, ["undo"], run(capsys, monkeypatch, ["new"])[1])
    assert code == 2


def test_malformed_input_exit_2(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["labels"], "{not json")
    assert code == 2 and "line 1" in err


def test_label_mismatch_exit_1(capsys, monkeypatch):
    doc = json.loads((GOLDEN / "two_vertex.state.json").read_text())
    doc["vertices"][1]["b"] = 4
    code, _, err = run(capsys, monkeypatch, ["labels"], json.dumps(doc))
    assert code == 1 and "vertex 1 b" in err


def test_missing_file_exit_2(capsys, monkeypatch, tmp_path):
    code, _, _ = run(capsys, monkeypatch, ["labels", "--state", str(tmp_path / "nope.json")])
    assert code == 2


def test_export(capsys, monkeypatch):
    seed = (GOLDEN / "worked.state.json").read_text()
    code, dot, _ = run(capsys, monkeypatch, ["export", "--format", "graph"], seed)
    assert code == 0 and dot.count(" -- ") == 10
    code, js, _ = run(capsys, monkeypatch, ["export", "--format", "json"], seed)
    assert len(json.loads(js)["vertices"]) == 11


def test_verify_single(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["verify", "lemma_5_6", "--trials", "50", "--workers", "1"])
    assert code == 0 and out.split()[:2] == ["PASS", "lemma_5_6"]


def test_verify_unknown(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["verify", "nonsense", "--trials", "5"])
    assert code == 2 and "adjunction" in err


def test_verify_all_small(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch,
                       ["verify", "all", "--trials", "20", "--depth", "6", "--workers", "1", "--json"])
    doc = json.loads(out)
    names = [r["check"] for r in doc]
    assert code == 0
    assert "paper_examples" in names and "thm_5_2[no-zero]" in names
    assert all(r["verdict"] == "pass" for r in doc)


def test_discriminate(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["discriminate-5-9", "--depth", "4", "--json"])
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "squared"
    code, out, _ = run(capsys, monkeypatch, ["discriminate-5-9", "--depth", "2"])
    assert code == 0 and "inconclusive" in out


def test_enumerate(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["enumerate", "--depth", "3", "--counts-only"])
    assert code == 0 and out.strip() == "counts by depth: 1 1 3 10"
    code, out, _ = run(capsys, monkeypatch, ["enumerate", "--depth", "2", "--json"])
    assert [json.loads(x)["depth"] for x in out.splitlines()] == [0, 1, 2, 2, 2]


def test_enumerate_bad_filter(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["enumerate", "--depth", "2", "--filter", "q<1"])
    assert code == 2 and "bad condition" in err


def test_enumerate_frontier_abort(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["enumerate", "--depth", "5", "--max-frontier", "5"])
    assert code == 1 and "aborted" in err


def test_census(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["census", "--a", "-1", "--b", "0", "--depth", "2"])
    assert code == 0
    assert "count: 1" in out and "min depth: 2" in out and "witness depth 2" in out
    code, out, _ = run(capsys, monkeypatch, ["census", "--a", "1", "--b", "-2", "--depth", "0", "--json"])
    assert json.loads(out)["count"] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "blowtree", "new"], capture_output=True, text=True)
    assert r.returncode == 0 and '"schema": 1' in r.stdout


def test_repl_subcommand(tmp_path):
    r = subprocess.run([sys.executable, "-m", "blowtree", "repl"], input="v 0\nlabels\nquit\n",
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.splitlines()[2].split() == ["kbar", "-2", "-1"]
