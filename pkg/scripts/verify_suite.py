"""Oracle equivalence over all small permutations and seeded random ones, all schemes."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from permlabel.harness import verify_exhaustive, verify_random


@dataclass
class SuiteConfig:
    exhaustive_max: int = 7
    random_sizes: list[int] = field(default_factory=lambda: [50, 100, 200])
    random_count: int = 1000
    seed: int = 0
    jobs: int = 1


def main(cfg: SuiteConfig) -> int:
    failed = False
    runs = [lambda n=n: verify_exhaustive(n, jobs=cfg.jobs) for n in range(1, cfg.exhaustive_max + 1)]
    runs += [lambda n=n: verify_random(n, cfg.random_count, cfg.seed, jobs=cfg.jobs)
             for n in cfg.random_sizes]
    for run in runs:
        for rep in run().values():
            print(f"{rep.summary()}  [{rep.throughput:,.0f} pairs/s]", flush=True)
            failed |= not rep.passed or rep.roundtrip_failed > 0
    return 1 if failed else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--exhaustive-max", type=int, default=7)
    p.add_argument("--random-sizes", type=lambda t: [int(x) for x in t.split(",")], default=[50, 100, 200])
    p.add_argument("--random-count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    sys.exit(main(SuiteConfig(**vars(p.parse_args()))))
