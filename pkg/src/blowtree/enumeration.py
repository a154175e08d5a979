"""Breadth-first enumeration of blow-up trees up to rooted isomorphism."""

from __future__ import annotations

import operator
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import engine as eng
from .engine import BlowupOp, BlowupState, VertexLabels

CAVEAT = (
    "classes are rooted weighted trees up to isomorphism fixing the line at "
    "infinity; plane automorphisms are not quotiented out, and 'minimal' means "
    "fewest blow-ups, not minimality with respect to a morphism"
)


def canonical_key(state: BlowupState) -> bytes:
    """AHU-style encoding ``(w child child ...)`` with children sorted.

    Every other label is determined by (tree, root, weights), so equal keys
    mean equal label multisets.
    """
    f = state.forest
    order = [state.root]
    parent = {state.root: None}
    for v in order:
        for y in f.neighbors(v):
            if y != parent[v]:
                parent[y] = v
                order.append(y)
    enc: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(enc[y] for y in f.neighbors(v) if y != parent[v])
        enc[v] = f"({f.weight(v)}{''.join(kids)})"
    return enc[state.root].encode("ascii")


# -- filters -------------------------------------------------------------------

_OPS = {
    "<": operator.lt, "<=": operator.le, "=": operator.eq, "==": operator.eq,
    "!=": operator.ne, ">=": operator.ge, ">": operator.gt,
}
LABELS = ("w", "b", "dP", "u", "l")


@dataclass(frozen=True)
class Condition:
    label: str
    op: str
    value: int

    def holds(self, x: VertexLabels) -> bool:
        return _OPS[self.op](getattr(x, self.label), self.value)

    def __str__(self) -> str:
        return f"{self.label}{self.op}{self.value}"


@dataclass(frozen=True)
class Clause:
    """``some`` vertex satisfies all conditions, or ``all`` vertices do."""

    quantifier: str
    conditions: tuple[Condition, ...]

    def holds(self, verts: Sequence[VertexLabels]) -> bool:
        hit = (all(c.holds(x) for c in self.conditions) for x in verts)
        return any(hit) if self.quantifier == "some" else all(hit)

    def __str__(self) -> str:
        return f"{self.quantifier}: " + ", ".join(map(str, self.conditions))


@dataclass(frozen=True)
class FilterSpec:
    clauses: tuple[Clause, ...] = ()

    def matches(self, state: BlowupState) -> bool:
        if not self.clauses:
            return True
        verts = state.report().vertices
        return all(c.holds(verts) for c in self.clauses)

    def __str__(self) -> str:
        return "; ".join(map(str, self.clauses))

    @classmethod
    def vertex_with(cls, **labels: int) -> "FilterSpec":
        conds = tuple(Condition(k, "=", v) for k, v in labels.items())
        return cls((Clause("some", conds),))


class FilterSyntaxError(ValueError):
    pass


_COND = re.compile(r"^\s*(w|b|dP|u|l)\s*(<=|>=|==|!=|<|>|=)\s*(-?\d+)\s*$")


def parse_filter(text: str) -> FilterSpec:
    """Parse ``"some: dP<0, b<0; all: u<=3"``.

    Clauses are separated by ``;`` and conjoined. A clause without a
    quantifier means ``some``.
    """
    clauses = []
    for raw in text.split(";"):
        raw = raw.strip()
        if not raw:
            continue
        quant = "some"
        m = re.match(r"^(some|all)\s*:(.*)$", raw)
        if m:
            quant, raw = m.group(1), m.group(2)
        conds = []
        for part in raw.split(","):
            cm = _COND.match(part)
            if not cm:
                raise FilterSyntaxError(
                    f"bad condition {part.strip()!r}; expected LABEL OP INT with "
                    f"LABEL in {', '.join(LABELS)}"
                )
            conds.append(Condition(cm.group(1), cm.group(2), int(cm.group(3))))
        clauses.append(Clause(quant, tuple(conds)))
    return FilterSpec(tuple(clauses))


# -- enumeration --------------------------------------------------------------

class FrontierLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Enumerated:
    key: bytes
    state: BlowupState
    depth: int


def _children(ops_list: list[tuple[BlowupOp, ...]]) -> list[list[tuple[bytes, tuple]]]:
    out = []
    for ops in ops_list:
        s = eng.replay(ops)
        kids = []
        for op in eng.available_ops(s):
            child = eng.apply(s, op)
            kids.append((canonical_key(child), ops + (op,)))
        out.append(kids)
    return out


def _expand(frontier: list[BlowupState], workers: int):
    """Children of every frontier state, in (parent, op) order."""
    if workers <= 1 or len(frontier) < 64:
        for s in frontier:
            for op in eng.available_ops(s):
                child = eng.apply(s, op)
                yield canonical_key(child), child
        return
    ops = [s.ops for s in frontier]
    size = -(-len(ops) // (workers * 4))
    chunks = [ops[i:i + size] for i in range(0, len(ops), size)]
    with ProcessPoolExecutor(workers) as pool:
        for part in pool.map(_children, chunks):
            for kids in part:
                for key, child_ops in kids:
                    yield key, child_ops


def enumerate_states(
    max_depth: int,
    filter: FilterSpec | None = None,
    workers: int = 1,
    max_frontier: int | None = None,
) -> Iterator[Enumerated]:
    """Yield each rooted class reachable in at most ``max_depth`` blow-ups once,
    with a shortest witness, level by level.

    A blow-up adds exactly one curve, so a class's depth is its vertex count
    minus one and deduplication only has to happen within a level. The
    first witness found in (parent, op) order is kept, so serial and
    parallel runs agree exactly.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    frontier = [eng.seed_p2()]
    depth = 0
    while True:
        for s in frontier:
            if filter is None or filter.matches(s):
                yield Enumerated(canonical_key(s), s, depth)
        if depth == max_depth:
            return
        seen: set[bytes] = set()
        nxt: list[BlowupState] = []
        for key, child in _expand(frontier, workers):
            if key in seen:
                continue
            seen.add(key)
            nxt.append(child if isinstance(child, BlowupState) else eng.replay(child))
            if max_frontier is not None and len(nxt) > max_frontier:
                raise FrontierLimitExceeded(
                    f"frontier at depth {depth + 1} exceeds {max_frontier} states"
                )
        frontier = nxt
        depth += 1


def count_by_depth(max_depth: int, workers: int = 1) -> list[int]:
    counts = [0] * (max_depth + 1)
    for e in enumerate_states(max_depth, workers=workers):
        counts[e.depth] += 1
    return counts


# -- census --------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    depth: int
    history: tuple[str, ...]
    vertex: int


@dataclass
class CensusReport:
    a: int
    b: int
    max_depth: int
    counts_by_depth: list[int] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)
    caveat: str = CAVEAT

    @property
    def count(self) -> int:
        return sum(self.counts_by_depth)

    @property
    def min_depth(self) -> int | None:
        return next((d for d, c in enumerate(self.counts_by_depth) if c), None)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "max_depth": self.max_depth,
            "count": self.count,
            "min_depth": self.min_depth,
            "counts_by_depth": self.counts_by_depth,
            "witnesses": [
                {"depth": w.depth, "history": list(w.history), "vertex": w.vertex}
                for w in self.witnesses
            ],
            "caveat": self.caveat,
        }


def census(
    a: int, b: int, max_depth: int, workers: int = 1, max_witnesses: int | None = None
) -> CensusReport:
    """Classes containing a curve with determinant label ``a`` and K-bar label ``b``."""
    rep = CensusReport(a, b, max_depth, [0] * (max_depth + 1))
    filt = FilterSpec.vertex_with(dP=a, b=b)
    for e in enumerate_states(max_depth, filt, workers=workers):
        rep.counts_by_depth[e.depth] += 1
        if max_witnesses is None or len(rep.witnesses) < max_witnesses:
            v = min(x for x, c in e.state.curves.items() if c.det == a and c.kbar == b)
            rep.witnesses.append(Witness(e.depth, tuple(map(str, e.state.ops)), v))
    return rep
