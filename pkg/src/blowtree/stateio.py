"""State files, label tables and graph export.

State file layout (UTF-8 JSON, keys in this order, one record per line)::

    {
      "schema": 1,
      "root": 0,
      "next_id": 3,
      "d": -1,
      "vertices": [
        {"id": 0, "w": 0, "b": -2, "dP": 1, "u": 1, "created": 0, "parents": []},
        ...
      ],
      "edges": [
        {"p": 0, "q": 1, "dPQ": 0},
        ...
      ],
      "history": [
        {"op": "vertex", "target": 0, "created": 1},
        {"op": "edge", "p": 0, "q": 1, "created": 2, "retired": 0},
        ...
      ]
    }

Integers are plain decimal JSON numbers of any size. Vertices are sorted by
id and edges by endpoint pair, so ``dumps(loads(text)) == text`` for any
file this module wrote.
"""

from __future__ import annotations

import json
from dataclasses import replace
from typing import Any

from . import engine as eng
from .engine import BlowupState, Curve, EdgeBlowup, Step, VertexBlowup
from .forest import ForestError, WeightedForest, det_fast

SCHEMA = 1


class StateFileError(ValueError):
    """Malformed or structurally inconsistent state file."""


class LabelMismatchError(ValueError):
    """A stored label disagrees with the value recomputed from the tree."""


def _op_record(step: Step) -> dict:
    op = step.op
    if isinstance(op, VertexBlowup):
        return {"op": "vertex", "target": op.target, "created": step.created}
    return {"op": "edge", "p": op.p, "q": op.q, "created": step.created, "retired": step.retired}


def _line(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _block(name: str, items: list, last: bool = False) -> str:
    tail = "" if last else ","
    if not items:
        return f'  "{name}": []{tail}'
    body = ",\n".join(f"    {_line(x)}" for x in items)
    return f'  "{name}": [\n{body}\n  ]{tail}'


def dumps(state: BlowupState) -> str:
    verts = [
        {"id": c.id, "w": c.weight, "b": c.kbar, "dP": c.det, "u": c.mult,
         "created": c.created, "parents": list(c.parents)}
        for _, c in sorted(state.curves.items())
    ]
    edges = [{"p": p, "q": q, "dPQ": x} for (p, q), x in sorted(state.edge_labels.items())]
    hist = [_op_record(s) for s in state.history]
    parts = [
        "{",
        f'  "schema": {SCHEMA},',
        f'  "root": {state.root},',
        f'  "next_id": {state.next_id},',
        f'  "d": {state.d},',
        _block("vertices", verts),
        _block("edges", edges),
        _block("history", hist, last=True),
        "}",
    ]
    return "\n".join(parts) + "\n"


def _int(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise StateFileError(f"{where}: missing field {key!r}")
    x = obj[key]
    if not isinstance(x, int) or isinstance(x, bool):
        raise StateFileError(f"{where}.{key}: expected an integer, got {x!r}")
    return x


def _obj(x: Any, where: str) -> dict:
    if not isinstance(x, dict):
        raise StateFileError(f"{where}: expected an object")
    return x


def _list(obj: dict, key: str, where: str) -> list:
    if key not in obj:
        raise StateFileError(f"{where}: missing field {key!r}")
    if not isinstance(obj[key], list):
        raise StateFileError(f"{where}.{key}: expected a list")
    return obj[key]


def parse(text: str) -> BlowupState:
    """Build a state from file text, checking syntax and field types only."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    doc = _obj(doc, "file")
    schema = _int(doc, "schema", "file")
    if schema != SCHEMA:
        raise StateFileError(f"schema: unsupported version {schema}")
    root = _int(doc, "root", "file")
    next_id = _int(doc, "next_id", "file")
    d = _int(doc, "d", "file")
    curves: dict[int, Curve] = {}
    for i, raw in enumerate(_list(doc, "vertices", "file")):
        where = f"vertices[{i}]"
        v = _obj(raw, where)
        parents = _list(v, "parents", where)
        for j, p in enumerate(parents):
            if not isinstance(p, int) or isinstance(p, bool):
                raise StateFileError(f"{where}.parents[{j}]: expected an integer")
        c = Curve(
            id=_int(v, "id", where), weight=_int(v, "w", where), kbar=_int(v, "b", where),
            det=_int(v, "dP", where), mult=_int(v, "u", where),
            created=_int(v, "created", where), parents=tuple(parents),
        )
        if c.id in curves:
            raise StateFileError(f"{where}.id: duplicate vertex id {c.id}")
        curves[c.id] = c
    edges: dict[tuple[int, int], int] = {}
    for i, raw in enumerate(_list(doc, "edges", "file")):
        where = f"edges[{i}]"
        e = _obj(raw, where)
        key = eng.edge_key(_int(e, "p", where), _int(e, "q", where))
        if key in edges:
            raise StateFileError(f"{where}: duplicate edge {key}")
        edges[key] = _int(e, "dPQ", where)
    history = []
    for i, raw in enumerate(_list(doc, "history", "file")):
        where = f"history[{i}]"
        h = _obj(raw, where)
        kind = h.get("op")
        if kind == "vertex":
            step = Step(VertexBlowup(_int(h, "target", where)), _int(h, "created", where))
        elif kind == "edge":
            step = Step(
                EdgeBlowup(_int(h, "p", where), _int(h, "q", where)),
                _int(h, "created", where), _int(h, "retired", where),
            )
        else:
            raise StateFileError(f"{where}.op: expected 'vertex' or 'edge', got {kind!r}")
        history.append(step)
    if root not in curves:
        raise StateFileError(f"root: vertex {root} is not listed")
    try:
        WeightedForest({v: c.weight for v, c in curves.items()}, edges)
    except ForestError as exc:
        raise StateFileError(f"edges: {exc}") from None
    return BlowupState(curves, edges, root, tuple(history), d, next_id)


def verify(state: BlowupState) -> None:
    """Reject a state whose labels or history do not match its tree."""
    actual = det_fast(state.forest)
    if state.d != actual:
        raise LabelMismatchError(f"d: stored {state.d}, recomputed {actual}")
    if actual != -1:
        raise LabelMismatchError(f"d: tree determinant is {actual}, expected -1")
    try:
        scratch = eng.recompute_from_scratch(state)
    except ArithmeticError as exc:
        raise LabelMismatchError(str(exc)) from None
    for x in scratch.vertices:
        c = state.curves[x.id]
        for name, stored, actual in (("b", c.kbar, x.b), ("dP", c.det, x.dP), ("u", c.mult, x.u)):
            if stored != actual:
                raise LabelMismatchError(
                    f"vertex {x.id} {name}: stored {stored}, recomputed {actual}"
                )
    for p, q, x in scratch.edges:
        stored = state.edge_labels[(p, q)]
        if stored != x:
            raise LabelMismatchError(f"edge {p}-{q} dPQ: stored {stored}, recomputed {x}")
    # the history must rebuild exactly this tree, ids included
    s = eng.seed_p2()
    if state.root != s.root:
        raise StateFileError(f"root: expected {s.root}, got {state.root}")
    for i, step in enumerate(state.history):
        if step.created < s.next_id:
            raise StateFileError(f"history[{i}].created: id {step.created} reused")
        try:
            s = eng.apply(replace(s, next_id=step.created), step.op)
        except eng.BlowupError as exc:
            raise StateFileError(f"history[{i}]: {exc}") from None
        if s.history[-1] != step:
            raise StateFileError(f"history[{i}]: retired edge label does not match replay")
    if s != state:
        raise StateFileError("history: replay does not reproduce the listed vertices and edges")
    if state.next_id < s.next_id:
        raise StateFileError(f"next_id: {state.next_id} would reuse an id")


def loads(text: str) -> BlowupState:
    state = parse(text)
    verify(state)
    return state


def save(state: BlowupState, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(state))


def load(path: str) -> BlowupState:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# -- displays ------------------------------------------------------------------

def label_table(state: BlowupState) -> str:
    """Three label rows under an id row, one column per curve.

    Rows: ``id``, ``det`` (vertex determinant labels), ``kbar``, ``self``
    (self-intersections). For a chain the edge labels sit between the two
    vertex columns of the ``det`` row, prefixed with ``_``; for other trees
    they follow on an ``edges`` line as ``p-q:_label``. Every cell is
    right-aligned to the widest entry in its column and columns are joined
    by two spaces, so the table splits cleanly on whitespace.
    """
    order = eng.display_order(state)
    f = state.forest
    chain = all(f.degree(v) <= 2 for v in order) and len(order) > 1
    cols: list[list[str]] = []
    for i, v in enumerate(order):
        c = state.curves[v]
        if i and chain:
            cols.append(["", f"_{state.edge_label(order[i - 1], v)}", "", ""])
        cols.append([str(v), str(c.det), str(c.kbar), str(c.weight)])
    names = ["id", "det", "kbar", "self"]
    widths = [max(len(cell) for cell in col) for col in cols]
    lines = []
    for r, name in enumerate(names):
        cells = [col[r].rjust(w) for col, w in zip(cols, widths)]
        lines.append((f"{name:<4}  " + "  ".join(cells)).rstrip())
    if not chain and state.edge_labels:
        edges = "  ".join(f"{p}-{q}:_{x}" for (p, q), x in sorted(state.edge_labels.items()))
        lines.append(f"edges  {edges}")
    lines.append(f"d = {state.d}")
    return "\n".join(lines) + "\n"


def full_table(state: BlowupState) -> str:
    rep = state.report()
    rows = [("id", "w", "b", "dP", "u", "l", "final")]
    for x in rep.vertices:
        rows.append(tuple(map(str, (x.id, x.w, x.b, x.dP, x.u, x.l))) + (
            "yes" if eng.is_final(state, x.id) else "no",))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(out) + "\n"


def report_dict(state: BlowupState) -> dict:
    rep = state.report()
    return {
        "root": rep.root,
        "d": rep.d,
        "vertices": [
            {"id": x.id, "w": x.w, "b": x.b, "dP": x.dP, "u": x.u, "dprime": x.dprime, "l": x.l}
            for x in rep.vertices
        ],
        "edges": [{"p": p, "q": q, "dPQ": x} for p, q, x in rep.edges],
    }


def export_json(state: BlowupState) -> str:
    return json.dumps(report_dict(state), indent=2) + "\n"


def export_dot(state: BlowupState) -> str:
    """Graphviz DOT: one node per curve, one edge per intersection point."""
    lines = ["graph blowup {"]
    for v in eng.display_order(state):
        c = state.curves[v]
        shape = ", shape=doublecircle" if v == state.root else ""
        lines.append(
            f'  {v} [label="{v}\\nw={c.weight}, b={c.kbar}, d={c.det}, u={c.mult}"{shape}];'
        )
    for (p, q), x in sorted(state.edge_labels.items()):
        lines.append(f'  {p} -- {q} [label="{x}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
