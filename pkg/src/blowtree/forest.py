"""Weighted forests, their minus-intersection matrix and its determinant.

A forest carries an integer weight on each vertex (a self-intersection
number in the geometric picture). Its matrix has ``-weight`` on the
diagonal and ``-1`` for every edge; :func:`det_fast`, :func:`det_matchings`
and :func:`det_gram` compute the determinant of that matrix three
independent ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .linalg import Inertia, det_cofactor, inertia

Vertex = Hashable


def _edge(p, q) -> tuple:
    return (p, q) if p <= q else (q, p)


class ForestError(ValueError):
    pass


class WeightedForest:
    """Immutable acyclic graph with an integer weight on each vertex."""

    __slots__ = ("_weights", "_edges", "_adj")

    def __init__(self, weights: Mapping[Vertex, int], edges: Iterable[tuple] = ()):
        w = {v: int(a) for v, a in weights.items()}
        es: set[tuple] = set()
        for e in edges:
            p, q = e
            if p == q:
                raise ForestError(f"loop at vertex {p!r}")
            for v in (p, q):
                if v not in w:
                    raise ForestError(f"edge endpoint {v!r} is not a vertex")
            key = _edge(p, q)
            if key in es:
                raise ForestError(f"duplicate edge {key!r}")
            es.add(key)
        adj: dict = {v: [] for v in w}
        for p, q in es:
            adj[p].append(q)
            adj[q].append(p)
        for v in adj:
            adj[v].sort()
        self._weights = w
        self._edges = frozenset(es)
        self._adj = adj
        if len(es) != len(w) - len(self._component_roots()):
            raise ForestError("graph has a cycle")

    @property
    def weights(self) -> Mapping[Vertex, int]:
        return dict(self._weights)

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def vertices(self) -> list:
        return sorted(self._weights)

    def weight(self, v: Vertex) -> int:
        return self._weights[v]

    def neighbors(self, v: Vertex) -> list:
        return list(self._adj[v])

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def has_edge(self, p: Vertex, q: Vertex) -> bool:
        return p != q and _edge(p, q) in self._edges

    def __len__(self) -> int:
        return len(self._weights)

    def __contains__(self, v) -> bool:
        return v in self._weights

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedForest):
            return NotImplemented
        return self._weights == other._weights and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((frozenset(self._weights.items()), self._edges))

    def __repr__(self) -> str:
        ws = ", ".join(f"{v!r}: {a}" for v, a in sorted(self._weights.items()))
        es = ", ".join(repr(e) for e in sorted(self._edges))
        return f"WeightedForest({{{ws}}}, [{es}])"

    def _component_roots(self) -> list:
        seen: set = set()
        roots = []
        for v in sorted(self._weights):
            if v in seen:
                continue
            roots.append(v)
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return roots

    def components(self) -> list["WeightedForest"]:
        out = []
        for r in self._component_roots():
            seen = {r}
            stack = [r]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(
                WeightedForest(
                    {v: self._weights[v] for v in seen},
                    [e for e in self._edges if e[0] in seen],
                )
            )
        return out

    def path(self, p: Vertex, q: Vertex) -> list | None:
        """Vertices on the tree path from ``p`` to ``q``, or None if disconnected."""
        prev = {p: None}
        stack = [p]
        while stack:
            x = stack.pop()
            if x == q:
                break
            for y in self._adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        if q not in prev:
            return None
        out = [q]
        while out[-1] != p:
            out.append(prev[out[-1]])
        return out[::-1]

    def with_weight(self, v: Vertex, weight: int) -> "WeightedForest":
        w = dict(self._weights)
        if v not in w:
            raise ForestError(f"unknown vertex {v!r}")
        w[v] = weight
        return WeightedForest(w, self._edges)

    def relabel(self, mapping: Mapping) -> "WeightedForest":
        return WeightedForest(
            {mapping[v]: a for v, a in self._weights.items()},
            [(mapping[p], mapping[q]) for p, q in self._edges],
        )


def disjoint_union(f: WeightedForest, g: WeightedForest) -> WeightedForest:
    common = set(f.weights) & set(g.weights)
    if common:
        raise ForestError(f"vertex ids shared by both forests: {sorted(common)!r}")
    return WeightedForest({**f.weights, **g.weights}, f.edges | g.edges)


@dataclass(frozen=True)
class GramMatrix:
    order: tuple
    rows: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.order)


def gram_matrix(forest: WeightedForest, order: Sequence | None = None) -> GramMatrix:
    order = tuple(forest.vertices if order is None else order)
    if sorted(order) != forest.vertices:
        raise ForestError("ordering must list every vertex exactly once")
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    rows = [[0] * n for _ in range(n)]
    for v, i in index.items():
        rows[i][i] = -forest.weight(v)
    for p, q in forest.edges:
        rows[index[p]][index[q]] = -1
        rows[index[q]][index[p]] = -1
    return GramMatrix(order, tuple(tuple(r) for r in rows))


def det_matchings(forest: WeightedForest) -> int:
    """Sum over all sets of pairwise disjoint edges S of
    (-1)^|S| * prod(-a_v for v not covered by S).

    Exponential in the number of edges; an oracle for small forests.
    """
    edges = sorted(forest.edges)
    weights = forest.weights
    total = 0

    def walk(i: int, covered: frozenset, size: int) -> None:
        nonlocal total
        if i == len(edges):
            term = -1 if size & 1 else 1
            for v, a in weights.items():
                if v not in covered:
                    term *= -a
            total += term
            return
        walk(i + 1, covered, size)
        p, q = edges[i]
        if p not in covered and q not in covered:
            walk(i + 1, covered | {p, q}, size + 1)

    walk(0, frozenset(), 0)
    return total


def det_gram(forest: WeightedForest) -> int:
    """Cofactor-expansion determinant of the explicit matrix."""
    return det_cofactor(gram_matrix(forest).rows)


def det_fast(forest: WeightedForest) -> int:
    """Linear-time determinant by eliminating leaves towards a root.

    For each vertex v with children c_1..c_k in a rooted component, keep
    D(v) = det(subtree at v) and D'(v) = det(subtree at v minus v) =
    prod D(c_i). Expanding at v gives
        D(v) = -a_v * prod D(c_i) - sum_i D'(c_i) * prod_{j != i} D(c_j)
    which is integral throughout, so zero pivots need no special case.
    """
    adj = forest._adj
    weights = forest._weights
    seen: set = set()
    result = 1
    for root in sorted(weights):
        if root in seen:
            continue
        seen.add(root)
        order = [root]
        parent = {root: None}
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    order.append(y)
        children: dict = {v: [] for v in order}
        for v in order[1:]:
            children[parent[v]].append(v)
        full: dict = {}
        minus: dict = {}
        for v in reversed(order):
            kids = children[v]
            k = len(kids)
            # prefix[i] = prod D(c_0..c_{i-1}); suffix[i] = prod D(c_i..c_{k-1})
            prefix = [1] * (k + 1)
            for j, c in enumerate(kids):
                prefix[j + 1] = prefix[j] * full[c]
            suffix = [1] * (k + 1)
            for j in range(k - 1, -1, -1):
                suffix[j] = suffix[j + 1] * full[kids[j]]
            d = -weights[v] * prefix[k]
            for j, c in enumerate(kids):
                d -= minus[c] * prefix[j] * suffix[j + 1]
            full[v] = d
            minus[v] = prefix[k]
        result *= full[root]
    return result


def remove_vertices(forest: WeightedForest, subset: Iterable[Vertex]) -> WeightedForest:
    drop = set(subset)
    for v in sorted(drop, key=repr):
        if v not in forest:
            raise ForestError(f"unknown vertex {v!r}")
    if not drop:
        return forest
    return WeightedForest(
        {v: a for v, a in forest.weights.items() if v not in drop},
        [e for e in forest.edges if e[0] not in drop and e[1] not in drop],
    )


def remove_edge(forest: WeightedForest, p: Vertex, q: Vertex) -> WeightedForest:
    if not forest.has_edge(p, q):
        raise ForestError(f"({p!r}, {q!r}) is not an edge")
    return WeightedForest(forest.weights, forest.edges - {_edge(p, q)})


def signature(forest: WeightedForest) -> Inertia:
    """Exact inertia (positive, zero, negative counts) of the matrix."""
    return inertia(gram_matrix(forest).rows)


Signature = Inertia
