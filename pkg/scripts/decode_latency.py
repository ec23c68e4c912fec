"""Mean scalar decode latency as n grows, relative to the smallest n."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from permlabel.harness import SCHEMES, bench


@dataclass
class LatencyConfig:
    exponents: list[int] = field(default_factory=lambda: [8, 10, 12, 14])
    queries: int = 10 ** 6
    schemes: list[str] = field(default_factory=lambda: list(SCHEMES))
    seed: int = 0


def main(cfg: LatencyConfig) -> None:
    for scheme in cfg.schemes:
        base = None
        for e in cfg.exponents:
            res = bench(2 ** e, cfg.queries, cfg.seed, scheme)
            base = base or res.mean_latency
            print(f"{scheme} n=2^{e}: {res.mean_latency * 1e6:6.2f} us/query "
                  f"(x{res.mean_latency / base:.2f} of n=2^{cfg.exponents[0]})", flush=True)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--exponents", type=lambda t: [int(x) for x in t.split(",")], default=[8, 10, 12, 14])
    p.add_argument("--queries", type=int, default=10 ** 6)
    p.add_argument("--schemes", type=lambda t: t.split(","), default=list(SCHEMES))
    p.add_argument("--seed", type=int, default=0)
    main(LatencyConfig(**vars(p.parse_args())))
