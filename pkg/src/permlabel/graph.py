"""Permutation graphs in their grid representation.

Value ``i`` of a permutation ``pi`` becomes the point ``(i, pos(i))`` where
``pos(i)`` is the 1-based position of ``i`` in ``pi``.  Two points are adjacent
exactly when one lies in the top-left or bottom-right quadrant of the other.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np


class _Unreachable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __str__(self) -> str:
        return "unreachable"

    def __reduce__(self):
        return (_Unreachable, ())


#: Distance between vertices of different connected components.
UNREACHABLE = _Unreachable()

ENUMERATION_LIMIT = 9


class Point(NamedTuple):
    x: int
    y: int


def validate_permutation(pi: Sequence[int]) -> list[int]:
    pi = [int(v) for v in pi]
    if not pi:
        raise ValueError("permutation must be non-empty")
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"not a permutation of 1..{len(pi)}: {pi}")
    return pi


@dataclass(frozen=True)
class PointSet:
    """Points with distinct coordinates, ``ys[x - 1]`` is the y of column x.

    Coordinates always form permutations of ``1..size`` on both axes.
    """

    ys: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.ys) != list(range(1, len(self.ys) + 1)):
            raise ValueError("y coordinates must form a permutation of 1..size")

    @property
    def size(self) -> int:
        return len(self.ys)

    def __len__(self) -> int:
        return len(self.ys)

    @property
    def points(self) -> list[Point]:
        return [Point(x, y) for x, y in enumerate(self.ys, start=1)]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        x, y = p
        return 1 <= x <= len(self.ys) and self.ys[x - 1] == y

    def at(self, x: int) -> Point:
        return Point(x, self.ys[x - 1])

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, int]]) -> PointSet:
        pts = sorted(points)
        if [p[0] for p in pts] != list(range(1, len(pts) + 1)):
            raise ValueError("x coordinates must form a permutation of 1..size")
        return cls(tuple(p[1] for p in pts))


def from_permutation(pi: Sequence[int]) -> PointSet:
    pi = validate_permutation(pi)
    ys = [0] * len(pi)
    for pos, value in enumerate(pi, start=1):
        ys[value - 1] = pos
    return PointSet(tuple(ys))


def to_permutation(ps: PointSet) -> list[int]:
    pi = [0] * ps.size
    for x, y in enumerate(ps.ys, start=1):
        pi[y - 1] = x
    return pi


def is_adjacent(p: tuple[int, int], q: tuple[int, int]) -> bool:
    return (p[0] - q[0]) * (p[1] - q[1]) < 0


def quadrant(p: tuple[int, int], ps: PointSet, which: str) -> set[Point]:
    """Points of ``ps`` strictly inside quadrant ``which`` (TL, TR, BL, BR) of ``p``."""
    tests = {
        "TL": lambda q: q.x < p[0] and q.y > p[1],
        "TR": lambda q: q.x > p[0] and q.y > p[1],
        "BL": lambda q: q.x < p[0] and q.y < p[1],
        "BR": lambda q: q.x > p[0] and q.y < p[1],
    }
    if which not in tests:
        raise ValueError(f"unknown quadrant {which!r}")
    return {q for q in ps if tests[which](q)}


def adjacency_matrix(ps: PointSet) -> np.ndarray:
    """Boolean matrix indexed by ``x - 1``."""
    xs = np.arange(1, ps.size + 1)
    ys = np.asarray(ps.ys)
    return (np.subtract.outer(xs, xs) * np.subtract.outer(ys, ys)) < 0


def distance_matrix(ps: PointSet) -> np.ndarray:
    """All-pairs BFS distances by frontier expansion; -1 marks unreachable pairs."""
    n = ps.size
    adj = adjacency_matrix(ps).astype(np.float32)
    dist = np.full((n, n), -1, dtype=np.int32)
    np.fill_diagonal(dist, 0)
    reached = np.eye(n, dtype=bool)
    frontier = reached.astype(np.float32)
    k = 0
    while True:
        k += 1
        new = ((frontier @ adj) > 0) & ~reached
        if not new.any():
            break
        dist[new] = k
        reached |= new
        frontier = new.astype(np.float32)
    return dist


def bfs_distances(ps: PointSet, source: int) -> list[int | None]:
    """Single-source BFS on the adjacency relation; index ``x - 1``, None if unreachable."""
    n = ps.size
    ys = ps.ys
    dist: list[int | None] = [None] * n
    dist[source - 1] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        uy = ys[u - 1]
        for v in range(1, n + 1):
            if dist[v - 1] is None and (u - v) * (uy - ys[v - 1]) < 0:
                dist[v - 1] = dist[u - 1] + 1
                queue.append(v)
    return dist


class DistanceOracle:
    """Exact all-pairs distances of a point set, the ground truth for every check."""

    def __init__(self, ps: PointSet):
        self.points = ps
        self.matrix = distance_matrix(ps)

    def dist(self, p, q):
        d = int(self.matrix[_x(p) - 1, _x(q) - 1])
        return UNREACHABLE if d < 0 else d

    def __call__(self, p, q):
        return self.dist(p, q)


def _x(p) -> int:
    return p if isinstance(p, (int, np.integer)) else p[0]


def oracle(ps: PointSet) -> DistanceOracle:
    return DistanceOracle(ps)


def component_ranges(ps: PointSet) -> list[tuple[int, int]]:
    """Inclusive x-ranges of connected components, left to right.

    A prefix of columns whose y values are exactly ``1..k`` has no edge to the
    rest, and inside each such block the graph is connected.
    """
    ranges = []
    start = 1
    high = 0
    for x, y in enumerate(ps.ys, start=1):
        high = max(high, y)
        if high == x:
            ranges.append((start, x))
            start = x + 1
    return ranges


def components(ps: PointSet) -> list[list[Point]]:
    """Connected components in original coordinates, largest first, ties left to right.

    :func:`component_blocks` gives the same components renumbered to ``1..size``.
    """
    return [[ps.at(block.parent_x(x)) for x in range(1, block.size + 1)]
            for block in component_blocks(ps)]


@dataclass(frozen=True)
class ComponentBlock:
    start: int  # first x of the component in the parent set
    points: PointSet  # renumbered to 1..size

    @property
    def size(self) -> int:
        return self.points.size

    def parent_x(self, x: int) -> int:
        return x + self.start - 1


def component_blocks(ps: PointSet) -> list[ComponentBlock]:
    blocks = []
    for lo, hi in component_ranges(ps):
        shift = lo - 1
        blocks.append(ComponentBlock(lo, PointSet(tuple(y - shift for y in ps.ys[lo - 1:hi]))))
    blocks.sort(key=lambda b: (-b.size, b.start))
    return blocks


# --- reproducible instance generation -------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood 2014); tiny and portable."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection sampling."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next()
            if r < limit:
                return r % bound


def random_permutation(n: int, seed: int) -> list[int]:
    """Fisher-Yates shuffle of ``1..n`` driven by SplitMix64(seed)."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = SplitMix64(seed)
    pi = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        pi[i], pi[j] = pi[j], pi[i]
    return pi


def enumerate_permutations(n: int) -> Iterator[list[int]]:
    if n < 1:
        raise ValueError("n must be positive")
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"refusing to enumerate {n}! permutations (limit n <= {ENUMERATION_LIMIT})")
    for pi in itertools.permutations(range(1, n + 1)):
        yield list(pi)


# --- permutation text format -----------------------------------------------

def format_permutation(pi: Sequence[int]) -> str:
    return f"{len(pi)}\n{' '.join(map(str, pi))}\n"


def parse_permutation(text: str) -> list[int]:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty permutation file")
    n = int(tokens[0])
    values = [int(t) for t in tokens[1:]]
    if len(values) != n:
        raise ValueError(f"expected {n} values, found {len(values)}")
    return validate_permutation(values)


def read_permutation(path: str | Path) -> list[int]:
    return parse_permutation(Path(path).read_text())
