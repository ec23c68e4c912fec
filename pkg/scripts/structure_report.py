"""Violation counts of the structural properties over seeded random instances."""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass

from permlabel.graph import random_permutation
from permlabel.invariants import CHECKS, check_permutation


@dataclass
class StructureConfig:
    n: int = 100
    count: int = 200
    seed: int = 0


def main(cfg: StructureConfig) -> int:
    total = Counter({name: 0 for name in CHECKS})
    for seed in range(cfg.seed, cfg.seed + cfg.count):
        total.update(check_permutation(random_permutation(cfg.n, seed)))
    width = max(map(len, CHECKS))
    for name in CHECKS:
        print(f"{name:<{width}}  {total[name]} violations")
    return 1 if any(total.values()) else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    sys.exit(main(StructureConfig(**vars(p.parse_args()))))
