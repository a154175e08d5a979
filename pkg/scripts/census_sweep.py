"""Tabulate how many rooted classes carry a curve with given
(determinant label, K-bar label), for a grid of pairs.

One enumeration pass serves the whole grid.
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass, fields

from blowtree.enumeration import CAVEAT, enumerate_states


@dataclass
class Config:
    depth: int = 6
    a_min: int = -3
    a_max: int = 3
    b_min: int = -4
    b_max: int = 2
    workers: int = 1


def parse_config() -> Config:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        ap.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    return Config(**vars(ap.parse_args()))


def main(cfg: Config) -> int:
    hits: Counter[tuple[int, int]] = Counter()
    total = 0
    for e in enumerate_states(cfg.depth, workers=cfg.workers):
        total += 1
        for pair in {(c.det, c.kbar) for c in e.state.curves.values()}:
            hits[pair] += 1
    a_range = range(cfg.a_min, cfg.a_max + 1)
    print(f"classes up to depth {cfg.depth}: {total}")
    print("rows: K-bar label b; columns: determinant label dP")
    print("b\\dP " + "".join(f"{a:>7}" for a in a_range))
    for b in range(cfg.b_max, cfg.b_min - 1, -1):
        print(f"{b:>4} " + "".join(f"{hits[(a, b)]:>7}" for a in a_range))
    print(f"\nnote: {CAVEAT}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main(parse_config()))
