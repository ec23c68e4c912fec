"""Verification against the BFS oracle, label-size sweeps and decode timing."""
from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import baselines, scheme
from .batch import ViewArrays, decode_pairs
from .graph import (component_blocks, distance_matrix, enumerate_permutations, from_permutation,
                    random_permutation)

SCHEMES = ("L3", "L5", "L7")


def _view3(bits):
    return scheme.view_of(scheme.deserialize_label(bits)[0])


def _view5(bits):
    return baselines.deserialize5(bits).view()


def _view7(bits):
    return baselines.deserialize7(bits).view()


VIEWS: dict[str, Callable] = {"L3": _view3, "L5": _view5, "L7": _view7}
DECODERS: dict[str, Callable] = {"L3": scheme.decode_distance, "L5": baselines.decode5,
                                 "L7": baselines.decode7}


def _component_labels(name: str, block, an, index: int):
    """``(x, label object)`` pairs plus the scheme's serializer and parser."""
    if name == "L3":
        labs, codec = scheme.encode_component(block.points, index, an)
        return ([(x, (lab, codec)) for x, lab in labs],
                lambda obj: scheme.serialize_label(*obj), scheme.deserialize_label)
    if name == "L5":
        return baselines.label5_component(an, index), baselines.serialize5, baselines.deserialize5
    if name == "L7":
        return baselines.label7_component(an, index), baselines.serialize7, baselines.deserialize7
    raise ValueError(f"unknown scheme {name!r}")


def encode_all(pi: Sequence[int], schemes: Iterable[str] = SCHEMES,
               roundtrip: Optional[Counter] = None) -> dict[str, list[tuple[int, str]]]:
    """Labels under several schemes, augmenting each component only once.

    With a ``roundtrip`` counter, every label object is also parsed back from
    its bits and compared; counts go to ``(scheme, "checked")`` and
    ``(scheme, "failed")``.
    """
    schemes = tuple(schemes)
    for name in schemes:
        if name not in SCHEMES:
            raise ValueError(f"unknown scheme {name!r}")
    blocks = component_blocks(from_permutation(pi))
    analyses = [scheme.analyze_component(b.points) for b in blocks]
    out = {}
    for name in schemes:
        labels = []
        for index, (block, an) in enumerate(zip(blocks, analyses)):
            objs, serialize, parse = _component_labels(name, block, an, index)
            for x, obj in objs:
                bits = serialize(obj)
                if roundtrip is not None:
                    roundtrip[name, "checked"] += 1
                    roundtrip[name, "failed"] += parse(bits) != obj
                labels.append((block.parent_x(x), bits))
        out[name] = sorted(labels)
    return out


@dataclass
class Mismatch:
    perm: list[int]
    u: int
    v: int
    expected: object
    actual: object


@dataclass
class RunReport:
    instance: str
    scheme: str
    pairs: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    max_bits: int = 0
    total_bits: int = 0
    labels: int = 0
    seconds: float = 0.0
    roundtrip_checked: int = 0
    roundtrip_failed: int = 0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def mean_bits(self) -> float:
        return self.total_bits / self.labels if self.labels else 0.0

    @property
    def throughput(self) -> float:
        return self.pairs / self.seconds if self.seconds else float("inf")

    def merge(self, other: RunReport) -> None:
        self.pairs += other.pairs
        self.mismatches += other.mismatches
        self.max_bits = max(self.max_bits, other.max_bits)
        self.total_bits += other.total_bits
        self.labels += other.labels
        self.seconds += other.seconds
        self.roundtrip_checked += other.roundtrip_checked
        self.roundtrip_failed += other.roundtrip_failed

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.mismatches)} mismatches)"
        text = (f"{self.scheme} {self.instance}: {status}, {self.pairs} pairs, "
                f"max {self.max_bits} bits, mean {self.mean_bits:.1f} bits")
        if self.roundtrip_failed:
            text += f", {self.roundtrip_failed} labels failed to round-trip"
        return text


def _as_distance(code: int):
    from .graph import UNREACHABLE
    return UNREACHABLE if code < 0 else int(code)


def check_labels(pi: Sequence[int], scheme_name: str, labels: list[tuple[int, str]],
                 truth: np.ndarray, instance: str = "") -> RunReport:
    n = len(pi)
    bits = [b for _, b in labels]
    view = VIEWS[scheme_name]
    arrays = ViewArrays.build([view(b) for b in bits], bits)
    i, j = np.divmod(np.arange(n * n), n)
    start = time.perf_counter()
    got = decode_pairs(arrays, i, j).reshape(n, n)
    elapsed = time.perf_counter() - start
    report = RunReport(instance, scheme_name, pairs=n * n, seconds=elapsed,
                       max_bits=max(len(b) for b in bits), total_bits=sum(map(len, bits)),
                       labels=n)
    for u, v in zip(*np.nonzero(got != truth)):
        report.mismatches.append(Mismatch(list(pi), int(u) + 1, int(v) + 1,
                                          _as_distance(truth[u, v]), _as_distance(got[u, v])))
    return report


def verify_permutation(pi: Sequence[int], schemes: Iterable[str] = SCHEMES,
                       instance: str = "") -> dict[str, RunReport]:
    schemes = tuple(schemes)
    truth = distance_matrix(from_permutation(pi))
    trips: Counter = Counter()
    encoded = encode_all(pi, schemes, trips)
    reports = {s: check_labels(pi, s, encoded[s], truth, instance) for s in schemes}
    for s, rep in reports.items():
        rep.roundtrip_checked, rep.roundtrip_failed = trips[s, "checked"], trips[s, "failed"]
    return reports


def _verify_batch(perms: list[list[int]], schemes: tuple[str, ...], instance: str) -> dict[str, RunReport]:
    total = {s: RunReport(instance, s) for s in schemes}
    for pi in perms:
        for s, rep in verify_permutation(pi, schemes, instance).items():
            total[s].merge(rep)
    return total


def _run(perm_batches: list[list[list[int]]], schemes: tuple[str, ...], instance: str,
         jobs: int) -> dict[str, RunReport]:
    total = {s: RunReport(instance, s) for s in schemes}
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_verify_batch, perm_batches, [schemes] * len(perm_batches),
                                  [instance] * len(perm_batches)))
    else:
        parts = [_verify_batch(batch, schemes, instance) for batch in perm_batches]
    for part in parts:  # batch order, so merged mismatches are deterministic
        for s in schemes:
            total[s].merge(part[s])
    return total


def _chunks(items: list, size: int) -> list[list]:
    return [items[k:k + size] for k in range(0, len(items), size)] or [[]]


def verify_exhaustive(n: int, schemes: Iterable[str] = SCHEMES, jobs: int = 1) -> dict[str, RunReport]:
    perms = list(enumerate_permutations(n))
    return _run(_chunks(perms, 500), tuple(schemes), f"n={n} exhaustive", jobs)


def verify_random(n: int, count: int, seed: int, schemes: Iterable[str] = SCHEMES,
                  jobs: int = 1) -> dict[str, RunReport]:
    """Instances use seeds ``seed, seed + 1, ..., seed + count - 1``."""
    perms = [random_permutation(n, seed + k) for k in range(count)]
    return _run(_chunks(perms, 50), tuple(schemes), f"n={n} seeds={seed}..{seed + count - 1}", jobs)


def renumber(values: Sequence[int]) -> list[int]:
    order = sorted(values)
    rank = {v: i for i, v in enumerate(order, start=1)}
    return [rank[v] for v in values]


def shrink(pi: Sequence[int], fails: Callable[[list[int]], bool]) -> list[int]:
    """Greedily drop single elements while the failure persists."""
    current = list(pi)
    progress = True
    while progress and len(current) > 1:
        progress = False
        for k in range(len(current)):
            candidate = renumber(current[:k] + current[k + 1:])
            if fails(candidate):
                current, progress = candidate, True
                break
    return current


def failing_under(schemes: Iterable[str]) -> Callable[[list[int]], bool]:
    schemes = tuple(schemes)
    return lambda pi: not all(r.passed for r in verify_permutation(pi, schemes).values())


# --- sizes -------------------------------------------------------------------------

@dataclass(frozen=True)
class SizeRow:
    n: int
    seed: int
    scheme: str
    max_bits: int
    mean_bits: float

    @property
    def three_log_n(self) -> float:
        return 3 * math.log2(self.n)

    @property
    def slack(self) -> float:
        return self.max_bits - self.three_log_n


CSV_HEADER = "n,seed,scheme,max_bits,mean_bits,three_log_n,slack"


def size_rows(n: int, seed: int, schemes: Iterable[str] = SCHEMES) -> list[SizeRow]:
    encoded = encode_all(random_permutation(n, seed), schemes)
    rows = []
    for s in sorted(encoded):
        lengths = [len(b) for _, b in encoded[s]]
        rows.append(SizeRow(n, seed, s, max(lengths), sum(lengths) / len(lengths)))
    return rows


def stats_sweep(sizes: Iterable[int], seeds: int, schemes: Iterable[str] = SCHEMES) -> list[SizeRow]:
    rows = [r for n in sorted(sizes) for seed in range(seeds) for r in size_rows(n, seed, schemes)]
    return sorted(rows, key=lambda r: (r.n, r.seed, r.scheme))


def rows_to_csv(rows: Iterable[SizeRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.n},{r.seed},{r.scheme},{r.max_bits},{r.mean_bits:.3f},"
                     f"{r.three_log_n:.6f},{r.slack:.6f}")
    return "\n".join(lines) + "\n"


# --- timing ------------------------------------------------------------------------

@dataclass(frozen=True)
class BenchResult:
    n: int
    queries: int
    seconds: float

    @property
    def mean_latency(self) -> float:
        return self.seconds / self.queries

    @property
    def throughput(self) -> float:
        return self.queries / self.seconds


def bench(n: int, queries: int, seed: int = 0, scheme_name: str = "L3",
          labels: Optional[list[str]] = None) -> BenchResult:
    """Time the scalar decoder on random vertex pairs, bit strings in, distance out."""
    if labels is None:
        labels = [b for _, b in encode_all(random_permutation(n, seed), [scheme_name])[scheme_name]]
    rng = np.random.default_rng(seed)
    pairs = rng.integers(0, len(labels), size=(queries, 2)).tolist()
    decode = DECODERS[scheme_name]
    start = time.perf_counter()
    for a, b in pairs:
        decode(labels[a], labels[b])
    return BenchResult(n, queries, time.perf_counter() - start)
