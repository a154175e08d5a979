from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from blowtree import engine as eng
from blowtree.checks import TWO_VERTEX_OPS, WORKED_OPS, VERTEX_EDGE_OPS
from blowtree.forest import WeightedForest


@st.composite
def forests(draw, max_vertices: int = 10, lo: int = -6, hi: int = 6):
    n = draw(st.integers(0, max_vertices))
    weights = {i: draw(st.integers(lo, hi)) for i in range(n)}
    edges = []
    for i in range(1, n):
        if draw(st.booleans()):
            edges.append((i, draw(st.integers(0, i - 1))))
    return WeightedForest(weights, edges)


@st.composite
def histories(draw, max_depth: int = 10):
    """Random op sequences; every draw is applicable to the state it meets."""
    n = draw(st.integers(0, max_depth))
    state = eng.seed_p2()
    for _ in range(n):
        ops = eng.available_ops(state)
        state = eng.apply(state, draw(st.sampled_from(ops)))
    return state


def random_forest(rng: random.Random, n_max: int = 10, lo: int = -6, hi: int = 6) -> WeightedForest:
    n = rng.randint(0, n_max)
    weights = {i: rng.randint(lo, hi) for i in range(n)}
    edges = [(i, rng.randrange(i)) for i in range(1, n) if rng.random() < 0.8]
    return WeightedForest(weights, edges)


@pytest.fixture
def two_vertex():
    return eng.replay(TWO_VERTEX_OPS)


@pytest.fixture
def vertex_edge_chain():
    return eng.replay(VERTEX_EDGE_OPS)


@pytest.fixture
def worked_final():
    return eng.replay(WORKED_OPS)
