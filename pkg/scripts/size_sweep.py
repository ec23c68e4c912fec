"""Label sizes of the three schemes over a range of n; writes CSV and prints slack per n."""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field
from pathlib import Path

from permlabel.harness import SCHEMES, rows_to_csv, stats_sweep


@dataclass
class SweepConfig:
    exponents: list[int] = field(default_factory=lambda: [8, 10, 12, 14])
    seeds: int = 20
    out: Path = Path("sizes.csv")


def main(cfg: SweepConfig) -> None:
    rows = stats_sweep([2 ** e for e in cfg.exponents], cfg.seeds)
    cfg.out.write_text(rows_to_csv(rows))
    print(f"wrote {len(rows)} rows to {cfg.out}")
    print(f"{'n':>7} " + " ".join(f"{s + ' max':>8}" for s in SCHEMES) + f" {'L3 slack':>9}")
    for e in cfg.exponents:
        n = 2 ** e
        worst = {s: max(r.max_bits for r in rows if r.n == n and r.scheme == s) for s in SCHEMES}
        print(f"{n:>7} " + " ".join(f"{worst[s]:>8}" for s in SCHEMES)
              + f" {worst['L3'] - 3 * math.log2(n):>9.1f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--exponents", type=lambda t: [int(x) for x in t.split(",")], default=[8, 10, 12, 14])
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--out", type=Path, default=Path("sizes.csv"))
    main(SweepConfig(**vars(p.parse_args())))
