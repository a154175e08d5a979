from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings

from blowtree import engine as eng
from blowtree.engine import (
    BlowupError,
    EdgeBlowup,
    VertexBlowup,
    ancestors,
    blow_down,
    blow_up_edge,
    blow_up_vertex,
    final_by_labels,
    is_final,
    recompute_from_scratch,
    seed_p2,
)
from blowtree.forest import det_fast, remove_edge, remove_vertices

from .conftest import histories


def labels(state, name):
    return state.report().column(name)


# -- seed ------------------------------------------------------------------------

def test_seed_labels():
    s = seed_p2()
    (c,) = s.curves.values()
    assert (c.weight, c.kbar, c.det, c.mult) == (1, -2, 1, 1)
    assert s.d == -1 and det_fast(s.forest) == -1


def test_seed_report():
    rep = seed_p2().report()
    assert len(rep.vertices) == 1 and rep.edges == ()


# -- vertex blow-up ------------------------------------------------------------------

def test_blow_up_root():
    s = blow_up_vertex(seed_p2(), 0)
    assert labels(s, "w") == [0, -1]
    assert labels(s, "b") == [-2, -1]
    assert labels(s, "dP") == [1, 0]
    assert labels(s, "u") == [1, 1]


def test_two_vertex(two_vertex):
    s = two_vertex
    assert labels(s, "w") == [0, -2, -1]
    assert labels(s, "b") == [-2, -1, 0]
    assert labels(s, "dP") == [1, 0, -1]
    assert s.edge_label(0, 1) == 0 and s.edge_label(1, 2) == -1
    assert s.d == -1
    assert labels(s, "u") == [1, 1, 1]
    last = s.report().vertex(2)
    assert (last.u ** 2, last.dP, last.dprime) == (1, -1, 2)


def test_vertex_blowup_leaves_old_labels(two_vertex):
    s = blow_up_vertex(two_vertex, 1)
    for v, c in two_vertex.curves.items():
        n = s.curves[v]
        assert (n.kbar, n.det, n.mult) == (c.kbar, c.det, c.mult)


def test_vertex_blowup_unknown():
    with pytest.raises(BlowupError, match="9"):
        blow_up_vertex(seed_p2(), 9)


# -- edge blow-up ------------------------------------------------------------------

def test_vertex_edge_chain(vertex_edge_chain):
    s = vertex_edge_chain
    assert labels(s, "w") == [-1, -1, -2]
    assert labels(s, "b") == [-2, -3, -1]
    assert labels(s, "dP") == [1, 2, 0]
    assert [x for _, _, x in s.report().edges] == [1, 0]
    assert s.d == -1


def test_edge_blowup_new_det_formula():
    before = blow_up_vertex(seed_p2(), 0)
    after = blow_up_edge(before, 0, 1)
    # 2*d_PQ + d_P + d_Q - d = 2*0 + 1 + 0 + 1
    assert after.curves[2].det == 2


def test_edge_blowup_multiplicity(vertex_edge_chain):
    r = vertex_edge_chain.report().vertex(2)
    assert r.u == 2
    assert r.u ** 2 == r.dP + r.dprime == 2 + 2


def test_edge_blowup_retires_edge(vertex_edge_chain):
    assert (0, 1) not in vertex_edge_chain.edge_labels
    assert vertex_edge_chain.history[-1].retired == 0


def test_edge_blowup_non_edge(two_vertex):
    with pytest.raises(BlowupError):
        blow_up_edge(two_vertex, 0, 2)


# -- blow-down -------------------------------------------------------------------

def test_blow_down_vertex(two_vertex):
    assert blow_down(blow_up_vertex(two_vertex, 1)) == two_vertex


def test_blow_down_edge_restores_label(two_vertex):
    s = blow_up_edge(two_vertex, 1, 2)
    back = blow_down(s)
    assert back == two_vertex
    assert back.edge_label(1, 2) == -1


def test_blow_down_seed():
    with pytest.raises(BlowupError):
        blow_down(seed_p2())


def test_ids_not_reused_after_blow_down(two_vertex):
    s = blow_up_vertex(blow_down(blow_up_vertex(two_vertex, 0)), 0)
    assert 4 in s.curves and 3 not in s.curves


@settings(max_examples=100)
@given(histories(10))
def test_blow_down_inverts_any_op(state):
    for op in eng.available_ops(state):
        assert blow_down(eng.apply(state, op)) == state


# -- finality and ancestry --------------------------------------------------------

def test_last_created_is_final(two_vertex):
    assert is_final(two_vertex, 2)
    assert not is_final(two_vertex, 0)


def test_chain_middle_is_final(vertex_edge_chain):
    assert is_final(vertex_edge_chain, 2)
    assert not is_final(vertex_edge_chain, 1)


def test_is_final_unknown():
    with pytest.raises(BlowupError):
        is_final(seed_p2(), 3)


def test_final_by_labels_cases(worked_final):
    s = worked_final
    tips = [v for v, c in s.curves.items() if c.kbar == 1]
    assert tips and all(final_by_labels(s, v) for v in tips)
    assert final_by_labels(s, 2) is None  # b = -1
    # b = 2: blow up a b=1 tip twice over its edge to the b=0 curve
    t = blow_up_vertex(s, tips[0])
    assert t.curves[11].kbar == 2
    assert final_by_labels(t, 11) is True


def test_final_by_labels_b1_single_zero_neighbour(two_vertex):
    s = blow_up_vertex(two_vertex, 2)
    assert s.curves[3].kbar == 1
    assert final_by_labels(s, 3) is True and is_final(s, 3)


def test_ancestors(two_vertex, vertex_edge_chain):
    assert ancestors(two_vertex, 0) == set()
    assert ancestors(two_vertex, 2) == {0, 1}
    assert ancestors(vertex_edge_chain, 2) == {0, 1}
    s = blow_up_edge(vertex_edge_chain, 2, 1)
    assert ancestors(s, 3) == {0, 1, 2}


# -- from scratch ---------------------------------------------------------------------

def test_recompute_examples(two_vertex, vertex_edge_chain):
    assert recompute_from_scratch(two_vertex) == two_vertex.report()
    assert recompute_from_scratch(vertex_edge_chain) == vertex_edge_chain.report()


@settings(max_examples=300)
@given(histories(12))
def test_incremental_equals_scratch(state):
    assert recompute_from_scratch(state) == state.report()


# -- reachable-state invariants -------------------------------------------------------

@settings(max_examples=200)
@given(histories(12))
def test_state_invariants(state):
    f = state.forest
    assert state.d == det_fast(f) == -1
    rep = state.report()
    for x in rep.vertices:
        c = state.curves[x.id]
        assert c.det == det_fast(remove_vertices(f, {x.id}))
        assert x.u >= 1
        if x.id != state.root:
            assert x.u ** 2 == x.dP + x.dprime
        # adjunction
        assert c.kbar * c.weight + sum(state.curves[q].kbar for q in f.neighbors(x.id)) == f.degree(x.id) - 2
        if x.b < 0 and x.dP < 0:
            assert x.u ** 2 >= -x.dP and x.l >= 0
    assert state.curves[state.root].mult == 1
    for (p, q), lab in state.edge_labels.items():
        assert lab == det_fast(remove_edge(f, p, q))
        assert gcd(state.curves[p].kbar, state.curves[q].kbar) == 1
        assert state.curves[p].kbar % 2 or state.curves[q].kbar % 2


@settings(max_examples=200)
@given(histories(12))
def test_kbar_structure(state):
    f = state.forest
    neg = {v for v, c in state.curves.items() if c.kbar < 0}
    seen, stack = {state.root}, [state.root]
    while stack:
        for y in f.neighbors(stack.pop()):
            if y in neg and y not in seen:
                seen.add(y)
                stack.append(y)
    assert seen == neg
    for v, c in state.curves.items():
        if c.kbar == 0:
            assert all(state.curves[q].kbar in (-1, 1) for q in f.neighbors(v))


@settings(max_examples=200)
@given(histories(12))
def test_negative_pairs_and_pair_formula(state):
    for p, q in combinations(sorted(state.curves), 2):
        if not eng.separated_by_root(state, p, q):
            continue
        cp, cq = state.curves[p], state.curves[q]
        dpq = det_fast(remove_vertices(state.forest, {p, q}))
        assert dpq == cp.mult ** 2 * cq.mult ** 2 - cp.det * cq.det
        if cp.kbar < 0 and cq.kbar < 0 and cp.det < 0 and cq.det < 0:
            assert dpq >= 0


def test_negative_negative_curves_have_zero_ancestor(two_vertex):
    s = blow_up_edge(two_vertex, 1, 2)
    c = s.curves[3]
    assert c.kbar < 0 and c.det < 0
    assert any(s.curves[a].kbar == 0 for a in ancestors(s, 3))
