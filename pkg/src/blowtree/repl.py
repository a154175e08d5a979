"""Line-oriented session for stepping through blow-ups by hand."""

from __future__ import annotations

import cmd
import sys
from typing import TextIO

from . import engine as eng
from . import stateio

HELP = """commands:
  v ID          blow up a point on curve ID
  e ID ID       blow up the intersection point of two curves
  undo          blow down the last curve
  labels        print the label table
  final         list final curves (by history and by K-bar labels)
  anc ID        ancestors of curve ID
  new           restart from the plane
  save PATH     write the state file
  load PATH     read a state file
  quit          leave
"""


class Session(cmd.Cmd):
    prompt = "blowtree> "
    intro = "blow-up session; 'help' lists commands"

    def __init__(self, state: eng.BlowupState | None = None,
                 stdin: TextIO | None = None, stdout: TextIO | None = None):
        super().__init__(stdin=stdin, stdout=stdout)
        if stdin is not None:
            self.use_rawinput = False
        self.state = eng.seed_p2() if state is None else state

    def say(self, text: str) -> None:
        self.stdout.write(text if text.endswith("\n") else text + "\n")

    def _ints(self, arg: str, n: int) -> list[int] | None:
        parts = arg.split()
        try:
            vals = [int(x) for x in parts]
        except ValueError:
            vals = []
        if len(vals) != n:
            self.say(f"error: expected {n} integer argument{'s' if n > 1 else ''}")
            return None
        return vals

    def _mutate(self, fn, *args) -> None:
        try:
            new = fn(self.state, *args)
        except eng.BlowupError as exc:
            self.say(f"error: {exc}")
            return
        self.state = new
        self.say(stateio.label_table(self.state))

    def do_v(self, arg: str) -> None:
        """v ID: blow up a point on curve ID"""
        vals = self._ints(arg, 1)
        if vals:
            self._mutate(eng.blow_up_vertex, *vals)

    def do_e(self, arg: str) -> None:
        """e P Q: blow up the intersection of curves P and Q"""
        vals = self._ints(arg, 2)
        if vals:
            self._mutate(eng.blow_up_edge, *vals)

    def do_undo(self, arg: str) -> None:
        """undo: blow down the most recent curve"""
        self._mutate(eng.blow_down)

    def do_new(self, arg: str) -> None:
        self.state = eng.seed_p2()
        self.say(stateio.label_table(self.state))

    def do_labels(self, arg: str) -> None:
        """labels [full]: print the label table"""
        if arg.strip() == "full":
            self.say(stateio.full_table(self.state))
        else:
            self.say(stateio.label_table(self.state))

    def do_final(self, arg: str) -> None:
        s = self.state
        by_history = [v for v in sorted(s.curves) if eng.is_final(s, v)]
        by_labels = [v for v in sorted(s.curves) if eng.final_by_labels(s, v)]
        self.say(f"final: {' '.join(map(str, by_history)) or '-'}")
        self.say(f"final by K-bar labels: {' '.join(map(str, by_labels)) or '-'}")

    def do_anc(self, arg: str) -> None:
        vals = self._ints(arg, 1)
        if not vals:
            return
        try:
            anc = eng.ancestors(self.state, vals[0])
        except eng.BlowupError as exc:
            self.say(f"error: {exc}")
            return
        self.say(" ".join(map(str, sorted(anc))) or "(none)")

    def do_save(self, arg: str) -> None:
        path = arg.strip()
        if not path:
            self.say("error: save needs a path")
            return
        try:
            stateio.save(self.state, path)
        except OSError as exc:
            self.say(f"error: {exc}")
            return
        self.say(f"saved {path}")

    def do_load(self, arg: str) -> None:
        path = arg.strip()
        try:
            self.state = stateio.load(path)
        except (OSError, stateio.StateFileError, stateio.LabelMismatchError) as exc:
            self.say(f"error: {exc}")
            return
        self.say(stateio.label_table(self.state))

    def do_quit(self, arg: str) -> bool:
        return True

    do_EOF = do_quit

    def do_help(self, arg: str) -> None:
        self.say(HELP)

    def default(self, line: str) -> None:
        self.say(f"error: unknown command {line.split()[0]!r}; try 'help'")

    def emptyline(self) -> None:
        pass


def run(state: eng.BlowupState | None = None, stdin: TextIO = sys.stdin,
        stdout: TextIO = sys.stdout) -> eng.BlowupState:
    s = Session(state, None if stdin is sys.stdin else stdin,
                None if stdout is sys.stdout else stdout)
    if stdin is not sys.stdin or not sys.stdin.isatty():
        s.prompt = ""
        s.intro = None
    s.cmdloop()
    return s.state
