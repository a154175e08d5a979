"""Named invariant checks run over seeded random blow-up histories.

Each registry entry maps a name to a function ``f(states) -> str | None``
that receives every intermediate state of one history (seed first) and
returns a description of the first violation, or None.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import gcd, prod
from typing import Callable, Sequence

from . import engine as eng
from .engine import (
    BlowupOp,
    BlowupState,
    EdgeBlowup,
    VertexBlowup,
    ancestors,
    blow_down,
    final_by_labels,
    is_final,
    separated_by_root,
)
from .forest import (
    det_fast,
    det_gram,
    det_matchings,
    disjoint_union,
    remove_edge,
    remove_vertices,
    signature,
)

THREADS_ENV = "BLOWTREE_THREADS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class HistorySampler:
    """Deterministic source of random op sequences.

    Trial ``i`` draws from ``random.Random(seed * 2**32 + i)`` (Mersenne
    Twister; seeded from an int, its output is identical on every
    platform), so any trial can be regenerated on its own.
    """

    seed: int = 1
    depth: int = 12
    edge_prob: float = 0.5
    forbid_zero_kbar: bool = False

    def history(self, trial: int) -> tuple[BlowupOp, ...]:
        rng = random.Random(self.seed * 2**32 + trial)
        n = rng.randint(1, self.depth)
        state = eng.seed_p2()
        ops: list[BlowupOp] = []
        for _ in range(n):
            edges = sorted(state.edge_labels)
            verts = sorted(state.curves)
            if self.forbid_zero_kbar:
                verts = [v for v in verts if state.curves[v].kbar != -1]
                edges = [
                    (p, q) for p, q in edges
                    if state.curves[p].kbar + state.curves[q].kbar != 0
                ]
            if edges and (not verts or rng.random() < self.edge_prob):
                op: BlowupOp = EdgeBlowup(*rng.choice(edges))
            elif verts:
                op = VertexBlowup(rng.choice(verts))
            else:
                break
            state = eng.apply(state, op)
            ops.append(op)
        return tuple(ops)


def states_of(ops: Sequence[BlowupOp]) -> list[BlowupState]:
    states = [eng.seed_p2()]
    for op in ops:
        states.append(eng.apply(states[-1], op))
    return states


# -- individual checks --------------------------------------------------------

def check_lemma_5_1(states):
    f = states[-1].forest
    a, b, c = det_matchings(f), det_fast(f), det_gram(f)
    if not a == b == c:
        return f"matchings={a} fast={b} cofactor={c}"


def check_lemma_5_2(states):
    prev = None
    for s in states:
        f = s.forest
        for v in f.vertices:
            g = remove_vertices(f, {v})
            whole = det_fast(g)
            parts = prod(det_fast(c) for c in g.components())
            if whole != parts:
                return f"removing {v}: d={whole} but product over components={parts}"
        if prev is not None:
            shift = max(f.vertices) + 1
            other = prev.relabel({v: v + shift for v in prev.vertices})
            u = det_fast(disjoint_union(f, other))
            if u != det_fast(f) * det_fast(other):
                return f"disjoint union of depth {s.depth} and {s.depth - 1}: {u}"
        prev = f


def check_lemma_5_3(states):
    for s in states:
        f = s.forest
        d = det_fast(f)
        for p in f.vertices:
            rhs = -f.weight(p) * det_fast(remove_vertices(f, {p}))
            rhs -= sum(det_fast(remove_vertices(f, {p, q})) for q in f.neighbors(p))
            if rhs != d:
                return f"depth {s.depth}, vertex {p}: expansion gives {rhs}, d={d}"


def check_lemma_5_4(states):
    for s in states:
        f = s.forest
        d = det_fast(f)
        for p, q in sorted(f.edges):
            rhs = det_fast(remove_edge(f, p, q)) - det_fast(remove_vertices(f, {p, q}))
            if rhs != d:
                return f"depth {s.depth}, edge {p}-{q}: expansion gives {rhs}, d={d}"


def check_lemma_5_5(states):
    for s in states:
        f = s.forest
        d = det_fast(f)
        for p in f.vertices:
            lowered = det_fast(f.with_weight(p, f.weight(p) - 1))
            dp = det_fast(remove_vertices(f, {p}))
            if lowered != d + dp:
                return f"depth {s.depth}, vertex {p}: {lowered} != {d} + {dp}"


def check_lemma_5_6(states):
    for s in states:
        if s.d != -1 or det_fast(s.forest) != -1:
            return f"depth {s.depth}: cached d={s.d}, recomputed {det_fast(s.forest)}"


def check_lemma_5_7(states):
    for before, after in zip(states, states[1:]):
        step = after.history[-1]
        r = step.created
        f = after.forest
        want = det_fast(remove_vertices(f, {r}))
        if after.curves[r].det != want:
            return f"step {after.depth}: new vertex {r} det label {after.curves[r].det}, actual {want}"
        for q in f.neighbors(r):
            got = after.edge_label(r, q)
            want = det_fast(remove_edge(f, r, q))
            if got != want:
                return f"step {after.depth}: new edge {r}-{q} label {got}, actual {want}"
        op, d = step.op, before.d
        if isinstance(op, VertexBlowup):
            expect = before.curves[op.target].det + d
        else:
            cp, cq = before.curves[op.p], before.curves[op.q]
            expect = 2 * before.edge_label(op.p, op.q) + cp.det + cq.det - d
        if expect != after.curves[r].det:
            return f"step {after.depth}: closed form gives {expect}"


def check_lemma_5_8(states):
    for s in states:
        scratch = s.scratch
        for x in scratch.vertices:
            if x.u != s.curves[x.id].mult:
                return f"depth {s.depth}, vertex {x.id}: u={s.curves[x.id].mult}, pullback solve gives {x.u}"
            if x.id != s.root and x.u * x.u != x.dP + x.dprime:
                return f"depth {s.depth}, vertex {x.id}: u^2={x.u ** 2} != {x.dP} + {x.dprime}"


def check_lemma_5_9(states):
    s = states[-1]
    rep = s.report()
    lab = {x.id: x for x in rep.vertices}
    for p, q in combinations(sorted(s.curves), 2):
        if separated_by_root(s, p, q):
            got = det_fast(remove_vertices(s.forest, {p, q}))
            want = lab[p].u ** 2 * lab[q].u ** 2 - lab[p].dP * lab[q].dP
            if got != want:
                return f"pair ({p},{q}): det={got}, u^2u^2-dd={want}"


def check_lemma_5_10(states):
    for s in states:
        for x in s.report().vertices:
            if x.b < 0 and x.dP < 0 and (x.u * x.u < -x.dP or x.l < 0):
                return f"depth {s.depth}, vertex {x.id}: u^2={x.u ** 2}, dP={x.dP}, l={x.l}"


def check_thm_5_2(states):
    zero_seen = False
    for s in states:
        zero_seen = zero_seen or any(c.kbar == 0 for c in s.curves.values())
        if not zero_seen:
            for c in s.curves.values():
                if c.det + c.kbar < -1:
                    return f"depth {s.depth}, vertex {c.id}: dP+b={c.det + c.kbar}"
            for (p, q), x in s.edge_labels.items():
                if x < 0:
                    return f"depth {s.depth}, edge {p}-{q}: dPQ={x}"
        for c in s.curves.values():
            if c.kbar < 0 and c.det < 0:
                if not any(s.curves[a].kbar == 0 for a in ancestors(s, c.id)):
                    return f"depth {s.depth}, vertex {c.id}: b<0, dP<0, no b=0 ancestor"


def check_thm_5_3(states):
    for s in states:
        neg = sorted(v for v, c in s.curves.items() if c.kbar < 0 and c.det < 0)
        for p, q in combinations(neg, 2):
            if separated_by_root(s, p, q):
                x = det_fast(remove_vertices(s.forest, {p, q}))
                if x < 0:
                    return f"depth {s.depth}, pair ({p},{q}): d_PQ={x}"


def check_cor_5_2(states):
    s = states[-1]
    neg = sorted(v for v, c in s.curves.items() if c.kbar < 0 and v != s.root)
    for k in (2, 3):
        for group in combinations(neg, k):
            if det_fast(remove_vertices(s.forest, set(group))) < 0:
                for p, q in combinations(group, 2):
                    if separated_by_root(s, p, q):
                        return f"set {group}: negative determinant across the root"


def check_prop_2_3(states):
    for s in states:
        for p, q in s.edge_labels:
            a, b = s.curves[p].kbar, s.curves[q].kbar
            if gcd(a, b) != 1:
                return f"depth {s.depth}, edge {p}-{q}: gcd({a},{b})={gcd(a, b)}"


def check_adjunction(states):
    for s in states:
        f = s.forest
        for v, c in s.curves.items():
            lhs = c.kbar * c.weight + sum(s.curves[q].kbar for q in f.neighbors(v))
            if lhs != f.degree(v) - 2:
                return f"depth {s.depth}, vertex {v}: {lhs} != {f.degree(v) - 2}"
        scratch = s.scratch
        for x in scratch.vertices:
            if x.b != s.curves[x.id].kbar:
                return f"depth {s.depth}, vertex {x.id}: kbar {s.curves[x.id].kbar}, solve gives {x.b}"


def check_kbar_structure(states):
    for s in states:
        f = s.forest
        neg = {v for v, c in s.curves.items() if c.kbar < 0}
        start = next(iter(neg))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in f.neighbors(x):
                if y in neg and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != neg:
            return f"depth {s.depth}: negative-label subgraph is disconnected"
        for v, c in s.curves.items():
            if c.kbar == 0:
                bad = [q for q in f.neighbors(v) if s.curves[q].kbar not in (-1, 1)]
                if bad:
                    return f"depth {s.depth}: zero vertex {v} adjacent to {bad[0]}"


def check_final_labels(states):
    for s in states:
        for v, c in s.curves.items():
            verdict = final_by_labels(s, v)
            if verdict is None:
                continue
            actual = is_final(s, v)
            if c.kbar == 1 and verdict != actual:
                return f"depth {s.depth}, vertex {v} (b=1): labels say {verdict}, history {actual}"
            if c.kbar >= 2 and verdict and not actual:
                return f"depth {s.depth}, vertex {v} (b={c.kbar}): labels say final, it is a parent"


def check_signature_hodge(states):
    for s in states:
        sig = signature(s.forest)
        if sig.n_negative != 1 or sig.n_zero != 0:
            return f"depth {s.depth}: inertia {tuple(sig)}"


def check_label_freeze(states):
    for before, after in zip(states, states[1:]):
        for v, c in before.curves.items():
            n = after.curves[v]
            if (c.kbar, c.det, c.mult, c.created, c.parents) != (
                n.kbar, n.det, n.mult, n.created, n.parents
            ):
                return f"step {after.depth}: labels of vertex {v} changed"
        for e, x in before.edge_labels.items():
            if e in after.edge_labels and after.edge_labels[e] != x:
                return f"step {after.depth}: label of edge {e} changed"


def check_blowdown_roundtrip(states):
    for before, after in zip(states, states[1:]):
        if blow_down(after) != before:
            return f"step {after.depth}: blow_down does not restore the previous state"


@dataclass(frozen=True)
class CheckSpec:
    fn: Callable[[list], str | None]
    summary: str


REGISTRY: dict[str, CheckSpec] = {
    "lemma_5_1": CheckSpec(check_lemma_5_1, "matchings sum = leaf elimination = cofactor determinant"),
    "lemma_5_2": CheckSpec(check_lemma_5_2, "determinant is multiplicative over disjoint unions"),
    "lemma_5_3": CheckSpec(check_lemma_5_3, "expansion by a vertex"),
    "lemma_5_4": CheckSpec(check_lemma_5_4, "expansion by an edge"),
    "lemma_5_5": CheckSpec(check_lemma_5_5, "lowering a weight by 1 adds d_P"),
    "lemma_5_6": CheckSpec(check_lemma_5_6, "d = -1 after every blow-up"),
    "lemma_5_7": CheckSpec(check_lemma_5_7, "labels of new vertices and edges"),
    "lemma_5_8": CheckSpec(check_lemma_5_8, "u_P^2 = d_P + d'_P; u matches the pullback solve"),
    "lemma_5_9": CheckSpec(check_lemma_5_9, "d_{P,Q} = u_P^2 u_Q^2 - d_P d_Q across the root"),
    "lemma_5_10": CheckSpec(check_lemma_5_10, "b<0, d_P<0 implies u_P^2 >= |d_P|"),
    "thm_5_2": CheckSpec(check_thm_5_2, "zero-free histories keep d_P+b>=-1, d_PQ>=0; K-bar-0 ancestors"),
    "thm_5_3": CheckSpec(check_thm_5_3, "two negative curves across the root have d_{P,Q} >= 0"),
    "cor_5_2": CheckSpec(check_cor_5_2, "negative-determinant sets of K-bar-negative curves lie on one side"),
    "prop_2_3": CheckSpec(check_prop_2_3, "adjacent K-bar labels are coprime"),
    "adjunction": CheckSpec(check_adjunction, "b_P w_P + sum of neighbour labels = deg - 2"),
    "kbar_structure": CheckSpec(check_kbar_structure, "negative part connected; zeros touch only +-1"),
    "final_labels": CheckSpec(check_final_labels, "finality read from K-bar labels agrees with history"),
    "signature_hodge": CheckSpec(check_signature_hodge, "exactly one negative eigenvalue"),
    "label_freeze": CheckSpec(check_label_freeze, "labels never change once created"),
    "blowdown_roundtrip": CheckSpec(check_blowdown_roundtrip, "blow-down inverts the last blow-up"),
}


class UnknownCheckError(KeyError):
    def __str__(self) -> str:
        return f"unknown check {self.args[0]!r}; known: {', '.join(REGISTRY)}"


@dataclass(frozen=True)
class Failure:
    trial: int
    history: tuple[str, ...]
    message: str


@dataclass
class CheckReport:
    name: str
    trials: int
    failures: list[Failure] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def verdict(self) -> str:
        return "fail" if self.failures else "pass"

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, with_time: bool = True) -> dict:
        out = {
            "check": self.name,
            "trials": self.trials,
            "verdict": self.verdict,
            "failures": [asdict(f) for f in self.failures],
        }
        if with_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def line(self) -> str:
        head = f"{self.verdict.upper():4} {self.name:20} trials={self.trials}"
        if self.failures:
            first = self.failures[0]
            head += f"  failures={len(self.failures)}  first: trial {first.trial}: {first.message}"
        return head + f"  ({self.wall_time:.2f}s)"


def _run_trials(
    names: Sequence[str], sampler: HistorySampler, trials: range
) -> tuple[list[list[Failure]], list[float]]:
    """Replay each history once and hand the same states to every check."""
    fns = [REGISTRY[n].fn for n in names]
    out: list[list[Failure]] = [[] for _ in names]
    spent = [0.0] * len(names)
    for t in trials:
        ops = sampler.history(t)
        states = states_of(ops)
        for i, fn in enumerate(fns):
            start = time.perf_counter()
            try:
                msg = fn(states)
            except Exception as exc:  # an exception inside a check is a failure
                msg = f"{type(exc).__name__}: {exc}"
            spent[i] += time.perf_counter() - start
            if msg:
                out[i].append(Failure(t, tuple(str(op) for op in ops), msg))
    return out, spent


def run_checks(
    names: Sequence[str], sampler: HistorySampler, trials: int, workers: int | None = None
) -> list[CheckReport]:
    """Run several checks over the same sampled histories.

    Wall time per report is the time spent inside that check (summed over
    workers when running in parallel).
    """
    for name in names:
        if name not in REGISTRY:
            raise UnknownCheckError(name)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or trials < 2 * workers:
        parts = [_run_trials(names, sampler, range(trials))]
    else:
        step = -(-trials // (workers * 4))
        chunks = [range(i, min(i + step, trials)) for i in range(0, trials, step)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_trials, [names] * len(chunks), [sampler] * len(chunks), chunks))
    reports = []
    for i, name in enumerate(names):
        failures = [f for fails, _ in parts for f in fails[i]]
        reports.append(CheckReport(name, trials, failures, sum(sp[i] for _, sp in parts)))
    return reports


def run_check(
    name: str, sampler: HistorySampler, trials: int, workers: int | None = None
) -> CheckReport:
    return run_checks([name], sampler, trials, workers)[0]


# -- worked examples -------------------------------------------------------------

def _rows(state: BlowupState):
    rep = state.report()
    return (
        rep.column("dP"),
        [x for _, _, x in _chain_edges(state)],
        rep.column("b"),
        rep.column("w"),
    )


def _chain_edges(state: BlowupState):
    order = eng.display_order(state)
    return [(p, q, state.edge_label(p, q)) for p, q in zip(order, order[1:])]


WORKED_OPS = (
    VertexBlowup(0), VertexBlowup(0), VertexBlowup(2), EdgeBlowup(2, 3),
    EdgeBlowup(2, 4), VertexBlowup(1), VertexBlowup(6), VertexBlowup(6),
    VertexBlowup(3), VertexBlowup(3),
)
# spine from the b=0 end created on the first new curve to the other b=0 end
WORKED_SPINE = (6, 1, 0, 2, 5, 4, 3)
WORKED_TIPS = {7: 6, 8: 6, 9: 3, 10: 3}
WORKED_SPINE_KBAR = (0, -1, -2, -1, -2, -1, 0)
WORKED_SPINE_WEIGHTS = (-3, -2, -1, -4, -1, -2, -4)
WORKED_STEPS_KBAR = (
    (-2,),
    (-1, -2),
    (-1, -2, -1),
    (-1, -2, -1, 0),
    (-1, -2, -1, -1, 0),
    (-1, -2, -1, -2, -1, 0),
    (0, -1, -2, -1, -2, -1, 0),
)

TWO_VERTEX_OPS = (VertexBlowup(0), VertexBlowup(1))
VERTEX_EDGE_OPS = (VertexBlowup(0), EdgeBlowup(0, 1))


def k_chain_ops(k: int) -> tuple[BlowupOp, ...]:
    """Blow up a point at infinity, the intersection point, then the
    right-hand edge ``k`` more times."""
    ops: list[BlowupOp] = [VertexBlowup(0), EdgeBlowup(0, 1)]
    for i in range(k):
        ops.append(EdgeBlowup(2 + i, 1))
    return tuple(ops)


def k_chain_expected(k: int) -> dict:
    return {
        "dP": [1, *range(2, k + 3), 0],
        "dPQ": [*range(1, k + 2), 0],
        "b": [-2, *(-j for j in range(3, k + 4)), -1],
        "w": [-1, *([-2] * k), -1, -(k + 2)],
    }


def _worked_failures() -> list[str]:
    out = []
    states = states_of(WORKED_OPS)
    for i, (s, want) in enumerate(zip(states, WORKED_STEPS_KBAR)):
        row = [s.curves[v].kbar for v in eng.display_order(s)]
        if row not in (list(want), list(want)[::-1]):
            out.append(f"worked example step {i}: K-bar row {row}, printed {list(want)}")
    final = states[-1]
    kb = tuple(final.curves[v].kbar for v in WORKED_SPINE)
    ws = tuple(final.curves[v].weight for v in WORKED_SPINE)
    if kb != WORKED_SPINE_KBAR:
        out.append(f"worked example final: spine K-bar {kb}")
    if ws != WORKED_SPINE_WEIGHTS:
        out.append(f"worked example final: spine weights {ws}")
    for tip, base in WORKED_TIPS.items():
        c = final.curves[tip]
        if c.kbar != 1 or c.weight != -1 or final.forest.neighbors(tip) != [base]:
            out.append(f"worked example final: branch tip {tip} is {c}")
    for a, b in zip(WORKED_SPINE, WORKED_SPINE[1:]):
        if not final.forest.has_edge(a, b):
            out.append(f"worked example final: spine edge {a}-{b} missing")
    if len(final) != 11 or final.d != -1:
        out.append(f"worked example final: {len(final)} vertices, d={final.d}")
    return out


def _chain_failures(label: str, ops, want: dict) -> list[str]:
    s = eng.replay(ops)
    dp, dpq, b, w = _rows(s)
    got = {"dP": dp, "dPQ": dpq, "b": b, "w": w}
    return [
        f"{label}: {key} row {got[key]}, expected {want[key]}"
        for key in ("dP", "dPQ", "b", "w")
        if got[key] != want[key]
    ]


def verify_paper_examples() -> CheckReport:
    start = time.perf_counter()
    msgs = _worked_failures()
    msgs += _chain_failures(
        "two vertex blow-ups", TWO_VERTEX_OPS,
        {"dP": [1, 0, -1], "dPQ": [0, -1], "b": [-2, -1, 0], "w": [0, -2, -1]},
    )
    msgs += _chain_failures(
        "vertex-edge chain", VERTEX_EDGE_OPS,
        {"dP": [1, 2, 0], "dPQ": [1, 0], "b": [-2, -3, -1], "w": [-1, -1, -2]},
    )
    for k in range(1, 9):
        msgs += _chain_failures(f"k-chain k={k}", k_chain_ops(k), k_chain_expected(k))
    failures = [Failure(i, (), m) for i, m in enumerate(msgs)]
    return CheckReport("paper_examples", 3 + 8, failures, time.perf_counter() - start)


# -- the two candidate pair formulas ------------------------------------------------

@dataclass(frozen=True)
class PairInstance:
    history: tuple[str, ...]
    n_vertices: int
    p: int
    q: int
    u_p: int
    u_q: int
    d_p: int
    d_q: int
    oracle: int
    literal: int
    squared: int


@dataclass
class DiscriminationReport:
    max_depth: int
    seed: int
    samples: int
    histories: int = 0
    pairs: int = 0
    literal_mismatches: int = 0
    squared_mismatches: int = 0
    separating: PairInstance | None = None
    squared_counterexample: PairInstance | None = None

    @property
    def verdict(self) -> str:
        if self.separating is None and not self.squared_mismatches:
            return "inconclusive at this depth"
        if not self.squared_mismatches and self.literal_mismatches:
            return "squared"
        if not self.literal_mismatches and self.squared_mismatches:
            return "literal"
        return "neither"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict
        return out

    def lines(self) -> list[str]:
        out = [
            f"depth<={self.max_depth} seed={self.seed} samples={self.samples} "
            f"histories={self.histories} pairs={self.pairs}",
            f"u_P u_Q - d_P d_Q       mismatches: {self.literal_mismatches}",
            f"u_P^2 u_Q^2 - d_P d_Q   mismatches: {self.squared_mismatches}",
            f"verdict: {self.verdict}",
        ]
        if self.separating:
            x = self.separating
            out.append(
                f"smallest separating instance ({x.n_vertices} vertices, history "
                f"[{'; '.join(x.history)}]): pair ({x.p},{x.q}) u=({x.u_p},{x.u_q}) "
                f"d=({x.d_p},{x.d_q}) oracle={x.oracle} squared={x.squared} literal={x.literal}"
            )
        return out


def _histories_upto(depth: int):
    """Every op sequence of length <= depth, depth-first in op order."""
    stack = [(eng.seed_p2(), ())]
    while stack:
        s, ops = stack.pop()
        yield s, ops
        if len(ops) < depth:
            for op in reversed(eng.available_ops(s)):
                stack.append((eng.apply(s, op), ops + (op,)))


def _pair_instances(state: BlowupState, ops):
    f = state.forest
    for p, q in combinations(sorted(state.curves), 2):
        if not separated_by_root(state, p, q):
            continue
        cp, cq = state.curves[p], state.curves[q]
        dd = cp.det * cq.det
        yield PairInstance(
            tuple(str(o) for o in ops), len(state), p, q, cp.mult, cq.mult, cp.det, cq.det,
            det_fast(remove_vertices(f, {p, q})),
            cp.mult * cq.mult - dd,
            cp.mult ** 2 * cq.mult ** 2 - dd,
        )


def discriminate_lemma_5_9(max_depth: int = 4, seed: int = 1, samples: int = 0) -> DiscriminationReport:
    """Test both candidate closed forms for d_{P,Q} on every pair separated
    by the root: exhaustively for histories up to ``max_depth``, then on
    ``samples`` seeded random histories of depth up to 12."""
    rep = DiscriminationReport(max_depth, seed, samples)
    sources = list(_histories_upto(max_depth))
    sampler = HistorySampler(seed=seed, depth=12)
    for t in range(samples):
        ops = sampler.history(t)
        sources.append((eng.replay(ops), ops))
    for state, ops in sources:
        rep.histories += 1
        for x in _pair_instances(state, ops):
            rep.pairs += 1
            if x.literal != x.oracle:
                rep.literal_mismatches += 1
            if x.squared != x.oracle:
                rep.squared_mismatches += 1
                if rep.squared_counterexample is None:
                    rep.squared_counterexample = x
            if (x.literal == x.oracle) != (x.squared == x.oracle):
                best = rep.separating
                if best is None or (x.n_vertices, len(x.history)) < (best.n_vertices, len(best.history)):
                    rep.separating = x
    return rep
