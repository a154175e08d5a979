"""Command-line entry point.

Exit status: 0 success, 1 a check or label verification failed, 2 usage
error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks, enumeration, stateio
from . import engine as eng
from . import repl as repl_mod


class UsageError(Exception):
    pass


def _read_state(args) -> eng.BlowupState:
    if args.state and args.state != "-":
        with open(args.state, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return stateio.loads(text)


def _write(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_state(args, state: eng.BlowupState) -> int:
    if state.d != -1 or eng.recompute_from_scratch(state).d != -1:
        print("error: determinant is no longer -1; refusing to write", file=sys.stderr)
        return 1
    _write(args, stateio.dumps(state))
    return 0


def cmd_new(args) -> int:
    return _write_state(args, eng.seed_p2())


def cmd_op(args) -> int:
    state = _read_state(args)
    try:
        if args.kind == "vertex":
            if len(args.ids) != 1:
                raise UsageError("op vertex takes one curve id")
            state = eng.blow_up_vertex(state, args.ids[0])
        else:
            if len(args.ids) != 2:
                raise UsageError("op edge takes two curve ids")
            state = eng.blow_up_edge(state, *args.ids)
    except eng.BlowupError as exc:
        raise UsageError(str(exc)) from None
    return _write_state(args, state)


def cmd_undo(args) -> int:
    state = _read_state(args)
    try:
        state = eng.blow_down(state)
    except eng.BlowupError as exc:
        raise UsageError(str(exc)) from None
    return _write_state(args, state)


def cmd_labels(args) -> int:
    state = _read_state(args)
    _write(args, stateio.full_table(state) if args.full else stateio.label_table(state))
    return 0


def cmd_export(args) -> int:
    state = _read_state(args)
    _write(args, stateio.export_dot(state) if args.format == "graph" else stateio.export_json(state))
    return 0


def cmd_verify(args) -> int:
    names = list(checks.REGISTRY) + ["paper_examples"] if args.check == "all" else [args.check]
    for name in names:
        if name != "paper_examples" and name not in checks.REGISTRY:
            raise UsageError(str(checks.UnknownCheckError(name)))
    sampler = checks.HistorySampler(args.seed, args.depth, args.edge_prob, args.forbid_zero)
    reports = checks.run_checks([n for n in names if n != "paper_examples"],
                                sampler, args.trials, args.workers)
    if "paper_examples" in names:
        reports.append(checks.verify_paper_examples())
    if not args.json:
        for rep in reports:
            print(rep.line(), flush=True)
    if args.check == "all" and not args.forbid_zero:
        zero_free = checks.HistorySampler(args.seed, args.depth, args.edge_prob, True)
        rep = checks.run_check("thm_5_2", zero_free, args.trials, args.workers)
        rep.name = "thm_5_2[no-zero]"
        reports.append(rep)
        if not args.json:
            print(rep.line(), flush=True)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    return 0 if all(r.passed for r in reports) else 1


def cmd_discriminate(args) -> int:
    rep = checks.discriminate_lemma_5_9(args.depth, args.seed, args.samples)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print("\n".join(rep.lines()))
    return 1 if rep.squared_mismatches else 0


def cmd_enumerate(args) -> int:
    filt = enumeration.parse_filter(args.filter) if args.filter else None
    counts = [0] * (args.depth + 1)
    try:
        for e in enumeration.enumerate_states(args.depth, filt, args.workers, args.max_frontier):
            counts[e.depth] += 1
            if args.json:
                print(json.dumps({"depth": e.depth, "key": e.key.decode(),
                                  "history": [str(o) for o in e.state.ops]}))
            elif not args.counts_only:
                print(f"{e.depth}  {e.key.decode()}  [{'; '.join(map(str, e.state.ops))}]")
    except enumeration.FrontierLimitExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 1
    if not args.json:
        print("counts by depth: " + " ".join(map(str, counts)))
    return 0


def cmd_census(args) -> int:
    try:
        rep = enumeration.census(args.a, args.b, args.depth, args.workers, args.witnesses)
    except enumeration.FrontierLimitExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
        return 0
    print(f"census dP={rep.a} b={rep.b} depth<={rep.max_depth}")
    print(f"count: {rep.count}")
    print(f"min depth: {rep.min_depth if rep.min_depth is not None else '-'}")
    print("counts by depth: " + " ".join(map(str, rep.counts_by_depth)))
    for w in rep.witnesses:
        print(f"witness depth {w.depth} vertex {w.vertex}: [{'; '.join(w.history)}]")
    print(f"note: {rep.caveat}")
    return 0


def cmd_repl(args) -> int:
    state = None
    if args.state:
        state = stateio.load(args.state)
    repl_mod.run(state)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blowtree", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    workers = dict(type=int, default=None,
                   help=f"worker processes (default ${checks.THREADS_ENV} or 1)")

    p = sub.add_parser("new", help="write the seed state (the plane)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("op", help="apply one blow-up to a state file")
    p.add_argument("kind", choices=["vertex", "edge"])
    p.add_argument("ids", type=int, nargs="+")
    p.add_argument("--state", default="-", help="input state file (default stdin)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("undo", help="blow down the last curve of a state file")
    p.add_argument("--state", default="-")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_undo)

    p = sub.add_parser("labels", help="print the label table")
    p.add_argument("--state", default="-")
    p.add_argument("--full", action="store_true", help="one row per curve with u and l")
    p.set_defaults(func=cmd_labels)

    p = sub.add_parser("export", help="export a state as DOT or label JSON")
    p.add_argument("--format", choices=["graph", "json"], default="graph")
    p.add_argument("--state", default="-")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", help="run invariant checks")
    p.add_argument("check", help="check name, 'paper_examples' or 'all'")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--forbid-zero", action="store_true",
                   help="never create a curve with K-bar label 0")
    p.add_argument("--workers", **workers)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("discriminate-5-9", help="compare the two pair-determinant formulas")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=0, help="extra random histories")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_discriminate)

    p = sub.add_parser("enumerate", help="list rooted classes of blow-up trees")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--filter", help="e.g. 'some: dP<0, b<0; all: u<=3'")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--max-frontier", type=int, default=None)
    p.add_argument("--counts-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", help="count classes with a (dP, K-bar) vertex")
    p.add_argument("--a", type=int, required=True, help="determinant label")
    p.add_argument("--b", type=int, required=True, help="K-bar label")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--witnesses", type=int, default=5, help="witnesses to print")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("repl", help="interactive session")
    p.add_argument("--state", default=None)
    p.set_defaults(func=cmd_repl)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 0) is None:
        args.workers = checks.default_workers()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except enumeration.FilterSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except stateio.StateFileError as exc:
        print(f"malformed state file: {exc}", file=sys.stderr)
        return 2
    except stateio.LabelMismatchError as exc:
        print(f"label verification failed: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
