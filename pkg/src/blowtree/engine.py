"""Blow-up histories over the projective plane with incrementally maintained labels.

Every curve carries four labels that never change once it exists:

* ``weight``  self-intersection (this one *does* change when a point on
  the curve is blown up),
* ``kbar``    coefficient in the augmented canonical class K + sum(E_i),
* ``det``     determinant of the tree with the curve removed,
* ``mult``    coefficient of the curve in the total transform of the line
  at infinity.

Edges carry their own determinant label (the tree with the edge cut).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping, Union

from .forest import WeightedForest, det_fast, gram_matrix, remove_edge, remove_vertices
from .linalg import solve


class BlowupError(ValueError):
    pass


@dataclass(frozen=True)
class VertexBlowup:
    target: int

    def __str__(self) -> str:
        return f"v {self.target}"


@dataclass(frozen=True)
class EdgeBlowup:
    p: int
    q: int

    def __str__(self) -> str:
        return f"e {self.p} {self.q}"


BlowupOp = Union[VertexBlowup, EdgeBlowup]


@dataclass(frozen=True)
class Curve:
    id: int
    weight: int
    kbar: int
    det: int
    mult: int
    created: int
    parents: tuple[int, ...]


@dataclass(frozen=True)
class Step:
    """One applied op: the vertex it created, and for an edge blow-up the
    label of the edge it destroyed (needed to undo it)."""

    op: BlowupOp
    created: int
    retired: int | None = None


def edge_key(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p <= q else (q, p)


@dataclass(frozen=True)
class BlowupState:
    curves: Mapping[int, Curve]
    edge_labels: Mapping[tuple[int, int], int]
    root: int
    history: tuple[Step, ...]
    d: int
    # id allocation is monotone across undo, so it is not part of equality
    next_id: int = field(compare=False)

    @cached_property
    def scratch(self) -> "LabelReport":
        """Labels rebuilt from the bare tree; computed once per state."""
        return recompute_from_scratch(self)

    @cached_property
    def forest(self) -> WeightedForest:
        return WeightedForest(
            {v: c.weight for v, c in self.curves.items()}, self.edge_labels.keys()
        )

    def __len__(self) -> int:
        return len(self.curves)

    def __contains__(self, v) -> bool:
        return v in self.curves

    def curve(self, v: int) -> Curve:
        try:
            return self.curves[v]
        except KeyError:
            raise BlowupError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: int) -> list[int]:
        self.curve(v)
        return self.forest.neighbors(v)

    def edge_label(self, p: int, q: int) -> int:
        try:
            return self.edge_labels[edge_key(p, q)]
        except KeyError:
            raise BlowupError(f"({p}, {q}) is not an edge") from None

    @property
    def ops(self) -> tuple[BlowupOp, ...]:
        return tuple(s.op for s in self.history)

    @property
    def depth(self) -> int:
        return len(self.history)

    def dprime(self, v: int) -> int:
        """Determinant of the tree with both the root and ``v`` removed."""
        self.curve(v)
        return det_fast(remove_vertices(self.forest, {self.root, v}))

    def report(self) -> "LabelReport":
        return LabelReport.from_state(self)


# Label-update rules, kept as small functions so tests can swap them out.

def vertex_blowup_labels(p: Curve, d: int) -> dict:
    return dict(kbar=p.kbar + 1, det=p.det + d, edge_pr=p.det + d, mult=p.mult)


def edge_blowup_labels(p: Curve, q: Curve, d_pq: int, d: int) -> dict:
    return dict(
        kbar=p.kbar + q.kbar,
        det=2 * d_pq + p.det + q.det - d,
        edge_pr=p.det + d_pq,
        edge_rq=q.det + d_pq,
        mult=p.mult + q.mult,
    )


def seed_p2() -> BlowupState:
    root = Curve(id=0, weight=1, kbar=-2, det=1, mult=1, created=0, parents=())
    return BlowupState({0: root}, {}, root=0, history=(), d=-1, next_id=1)


def blow_up_vertex(state: BlowupState, p: int) -> BlowupState:
    cp = state.curve(p)
    r = state.next_id
    lab = vertex_blowup_labels(cp, state.d)
    curves = dict(state.curves)
    curves[p] = replace(cp, weight=cp.weight - 1)
    curves[r] = Curve(
        id=r, weight=-1, kbar=lab["kbar"], det=lab["det"], mult=lab["mult"],
        created=len(state.curves), parents=(p,),
    )
    edges = dict(state.edge_labels)
    edges[edge_key(p, r)] = lab["edge_pr"]
    op = VertexBlowup(p)
    return BlowupState(
        curves, edges, state.root, state.history + (Step(op, r),), state.d, r + 1
    )


def blow_up_edge(state: BlowupState, p: int, q: int) -> BlowupState:
    d_pq = state.edge_label(p, q)
    cp, cq = state.curve(p), state.curve(q)
    r = state.next_id
    lab = edge_blowup_labels(cp, cq, d_pq, state.d)
    curves = dict(state.curves)
    curves[p] = replace(cp, weight=cp.weight - 1)
    curves[q] = replace(cq, weight=cq.weight - 1)
    curves[r] = Curve(
        id=r, weight=-1, kbar=lab["kbar"], det=lab["det"], mult=lab["mult"],
        created=len(state.curves), parents=(p, q),
    )
    edges = dict(state.edge_labels)
    del edges[edge_key(p, q)]
    edges[edge_key(p, r)] = lab["edge_pr"]
    edges[edge_key(r, q)] = lab["edge_rq"]
    op = EdgeBlowup(p, q)
    return BlowupState(
        curves, edges, state.root, state.history + (Step(op, r, d_pq),), state.d, r + 1
    )


def apply(state: BlowupState, op: BlowupOp) -> BlowupState:
    if isinstance(op, VertexBlowup):
        return blow_up_vertex(state, op.target)
    if isinstance(op, EdgeBlowup):
        return blow_up_edge(state, op.p, op.q)
    raise TypeError(f"not a blow-up op: {op!r}")


def replay(ops: Iterable[BlowupOp], start: BlowupState | None = None) -> BlowupState:
    state = seed_p2() if start is None else start
    for op in ops:
        state = apply(state, op)
    return state


def available_ops(state: BlowupState) -> list[BlowupOp]:
    """Every op applicable to ``state``, vertex blow-ups first, in id order."""
    ops: list[BlowupOp] = [VertexBlowup(v) for v in sorted(state.curves)]
    ops += [EdgeBlowup(p, q) for p, q in sorted(state.edge_labels)]
    return ops


def blow_down(state: BlowupState) -> BlowupState:
    """Undo the most recent blow-up."""
    if not state.history:
        raise BlowupError("nothing to blow down: state is the seed")
    step = state.history[-1]
    r = step.created
    cr = state.curve(r)
    if cr.created != len(state.curves) - 1:
        raise BlowupError(f"vertex {r} is not the last-created curve")
    if cr.weight != -1:
        raise BlowupError(f"vertex {r} has weight {cr.weight}, expected -1")
    if not is_final(state, r):
        raise BlowupError(f"vertex {r} is a parent of another curve")
    curves = dict(state.curves)
    del curves[r]
    edges = dict(state.edge_labels)
    for v in cr.parents:
        curves[v] = replace(curves[v], weight=curves[v].weight + 1)
        del edges[edge_key(v, r)]
    if isinstance(step.op, EdgeBlowup):
        edges[edge_key(step.op.p, step.op.q)] = step.retired
    return BlowupState(
        curves, edges, state.root, state.history[:-1], state.d, state.next_id
    )


def is_final(state: BlowupState, p: int) -> bool:
    state.curve(p)
    return not any(p in c.parents for c in state.curves.values())


def final_by_labels(state: BlowupState, p: int) -> bool | None:
    """Finality read off K-bar labels alone; None where no criterion applies.

    b >= 2: final when b is a strict local maximum (sufficient only).
    b == 1: final iff the neighbours' labels are {0} or {0, 1}.
    """
    b = state.curve(p).kbar
    around = sorted(state.curves[q].kbar for q in state.forest.neighbors(p))
    if b >= 2:
        return all(b > x for x in around)
    if b == 1:
        return around in ([0], [0, 1])
    return None


def ancestors(state: BlowupState, p: int) -> set[int]:
    stack = list(state.curve(p).parents)
    out: set[int] = set()
    while stack:
        v = stack.pop()
        if v not in out:
            out.add(v)
            stack.extend(state.curves[v].parents)
    return out


def separated_by_root(state: BlowupState, p: int, q: int) -> bool:
    """True when neither is the root and the root lies on the path p..q."""
    if state.root in (p, q) or p == q:
        return False
    path = state.forest.path(p, q)
    return path is not None and state.root in path


def display_order(state: BlowupState) -> list[int]:
    """Chains read end to end (starting at the end with the older curve);
    other trees in DFS pre-order from the root, children by creation."""
    f = state.forest
    if all(f.degree(v) <= 2 for v in f.vertices) and len(f.edges) == len(f) - 1:
        ends = [v for v in f.vertices if f.degree(v) <= 1]
        start = min(ends, key=lambda v: state.curves[v].created)
        order = [start]
        prev = None
        while len(order) < len(f):
            nxt = [y for y in f.neighbors(order[-1]) if y != prev]
            prev = order[-1]
            order.append(nxt[0])
        return order
    order: list[int] = []
    stack = [(state.root, None)]
    while stack:
        v, parent = stack.pop()
        order.append(v)
        kids = [y for y in f.neighbors(v) if y != parent]
        kids.sort(key=lambda y: state.curves[y].created, reverse=True)
        stack.extend((y, v) for y in kids)
    return order


@dataclass(frozen=True)
class VertexLabels:
    id: int
    w: int
    b: int
    dP: int
    u: int
    dprime: int

    @property
    def l(self) -> int:
        return 2 * self.dP + self.dprime


@dataclass(frozen=True)
class LabelReport:
    root: int
    vertices: tuple[VertexLabels, ...]
    edges: tuple[tuple[int, int, int], ...]
    d: int

    @classmethod
    def from_state(cls, state: BlowupState) -> "LabelReport":
        verts = tuple(
            VertexLabels(
                v, c.weight, c.kbar, c.det, c.mult,
                state.dprime(v),
            )
            for v in display_order(state)
            for c in (state.curves[v],)
        )
        edges = tuple((p, q, x) for (p, q), x in sorted(state.edge_labels.items()))
        return cls(state.root, verts, edges, state.d)

    def vertex(self, v: int) -> VertexLabels:
        for x in self.vertices:
            if x.id == v:
                return x
        raise KeyError(v)

    def column(self, name: str) -> list[int]:
        return [getattr(x, name) for x in self.vertices]


def _integral(xs, what: str) -> list[int]:
    out = []
    for x in xs:
        if x.denominator != 1:
            raise ArithmeticError(f"{what} has a non-integral solution {x}")
        out.append(int(x))
    return out


def recompute_from_scratch(state: BlowupState) -> LabelReport:
    """All labels rebuilt from the bare weighted tree.

    Determinant labels come from det_fast on removals; K-bar labels from the
    adjunction equations  w_i b_i + sum_{j~i} b_j = deg(i) - 2;  multiplicities
    from  (root + sum u_P P) . E_j = [j == root].
    """
    f = state.forest
    order = f.vertices
    g = gram_matrix(f, order)
    inter = [[-x for x in row] for row in g.rows]
    kbar = _integral(solve(inter, [f.degree(v) - 2 for v in order]), "adjunction system")
    mult = _integral(
        solve(inter, [1 if v == state.root else 0 for v in order]), "pullback system"
    )
    kb = dict(zip(order, kbar))
    mu = dict(zip(order, mult))
    if mu[state.root] != 1:
        raise ArithmeticError(f"root multiplicity is {mu[state.root]}, expected 1")
    verts = []
    for v in display_order(state):
        dp = det_fast(remove_vertices(f, {v}))
        dpp = det_fast(remove_vertices(f, {state.root, v}))
        verts.append(VertexLabels(v, f.weight(v), kb[v], dp, mu[v], dpp))
    edges = tuple((p, q, det_fast(remove_edge(f, p, q))) for p, q in sorted(f.edges))
    return LabelReport(state.root, tuple(verts), edges, det_fast(f))


def kbar_gcd_ok(state: BlowupState) -> bool:
    return all(
        gcd(state.curves[p].kbar, state.curves[q].kbar) == 1 for p, q in state.edge_labels
    )
