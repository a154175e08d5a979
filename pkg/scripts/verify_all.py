"""Run every registered invariant check over one seeded batch of histories.

    python scripts/verify_all.py --trials 10000 --workers 4
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, fields

from blowtree.checks import REGISTRY, HistorySampler, run_checks, verify_paper_examples


@dataclass
class Config:
    seed: int = 1
    trials: int = 2000
    depth: int = 12
    edge_prob: float = 0.5
    workers: int = 1
    out: str = ""  # optional JSON report path


def parse_config() -> Config:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        ap.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    return Config(**vars(ap.parse_args()))


def main(cfg: Config) -> int:
    sampler = HistorySampler(cfg.seed, cfg.depth, cfg.edge_prob)
    reports = run_checks(list(REGISTRY), sampler, cfg.trials, cfg.workers)
    zero_free = HistorySampler(cfg.seed, cfg.depth, cfg.edge_prob, forbid_zero_kbar=True)
    extra = run_checks(["thm_5_2"], zero_free, cfg.trials, cfg.workers)[0]
    extra.name = "thm_5_2[no-zero]"
    reports += [extra, verify_paper_examples()]
    for r in reports:
        print(r.line())
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "reports": [r.to_dict() for r in reports]}, fh, indent=2)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main(parse_config()))
