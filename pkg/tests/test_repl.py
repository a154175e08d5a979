import io
from pathlib import Path

from blowtree import engine as eng
from blowtree.repl import run

GOLDEN = Path(__file__).parent / "golden"


def session(script, state=None):
    out = io.StringIO()
    final = run(state, io.StringIO(script), out)
    return final, out.getvalue()


def test_vertex_then_labels():
    state, out = session("v 0\nlabels\n")
    kbar = [l for l in out.splitlines() if l.startswith("kbar")]
    assert kbar[-1].split()[1:] == ["-2", "-1"]
    assert len(state) == 2


def test_undo_on_seed_keeps_state():
    state, out = session("undo\n")
    assert "error" in out
    assert state == eng.seed_p2()


def test_chain_table():
    state, out = session("v 0\ne 0 1\nlabels\n")
    assert out.endswith((GOLDEN / "vertex_edge_chain.labels.txt").read_text())


def test_bad_input_does_not_crash():
    state, out = session("v\nv x\ne 0\nv 9\nfrobnicate\n\nhelp\n")
    assert out.count("error") == 5
    assert "blow down" in out
    assert state == eng.seed_p2()


def test_final_and_ancestors():
    state, out = session("v 0\nv 1\nfinal\nanc 2\n")
    assert "final: 2" in out
    assert out.rstrip().endswith("0 1")


def test_save_load(tmp_path):
    p = tmp_path / "s.json"
    _, _ = session(f"v 0\nv 1\nsave {p}\n")
    assert p.read_text() == (GOLDEN / "two_vertex.state.json").read_text()
    state, out = session(f"new\nload {p}\n")
    assert state == eng.replay([eng.VertexBlowup(0), eng.VertexBlowup(1)])
    _, out = session(f"load {tmp_path / 'missing.json'}\nsave\n")
    assert out.count("error") == 2


def test_new_resets():
    state, _ = session("v 0\nv 0\nnew\n")
    assert state == eng.seed_p2()


def test_full_labels():
    _, out = session("v 0\nlabels full\n")
    assert "final" in out.splitlines()[-3]
