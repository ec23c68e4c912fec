"""Top/bottom boundaries, distance layers and the lambda ordering.

The top boundary holds the points with an empty top-left quadrant, the bottom
boundary those with an empty bottom-right quadrant.  Both are staircases, so a
boundary point's neighbours on the opposite boundary form one contiguous index
range and everything below runs on bisection over sorted coordinate arrays.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional

from .graph import Point, PointSet

INFINITY = math.inf

TOP, BOTTOM = 0, 1


class ExtremeNeighbors(NamedTuple):
    bfirst: Point
    blast: Point
    tfirst: Point
    tlast: Point


@dataclass(frozen=True)
class BoundaryStructure:
    top: list[Point]
    bottom: list[Point]
    p0: Point
    layer: dict[Point, int] = field(default_factory=dict)
    lam: dict[Point, int] = field(default_factory=dict)
    layer_last: dict[int, Point] = field(default_factory=dict)
    layers: list[list[Point]] = field(default_factory=list)

    def __post_init__(self):
        object.__setattr__(self, "_tx", [p.x for p in self.top])
        object.__setattr__(self, "_ty", [p.y for p in self.top])
        object.__setattr__(self, "_bx", [p.x for p in self.bottom])
        object.__setattr__(self, "_by", [p.y for p in self.bottom])

    @property
    def boundary_points(self) -> list[Point]:
        return list(dict.fromkeys(self.top + self.bottom))

    def on_top(self, p) -> bool:
        i = bisect_left(self._tx, p[0])
        return i < len(self.top) and self.top[i] == p

    def on_bottom(self, p) -> bool:
        i = bisect_left(self._bx, p[0])
        return i < len(self.bottom) and self.bottom[i] == p

    def bottom_range(self, p) -> range:
        """Indices of bottom points in the BR quadrant of ``p``."""
        return range(bisect_right(self._bx, p[0]), bisect_left(self._by, p[1]))

    def top_range(self, p) -> range:
        """Indices of top points in the TL quadrant of ``p``."""
        return range(bisect_right(self._ty, p[1]), bisect_left(self._tx, p[0]))

    def is_last(self, p: Point) -> bool:
        return self.layer_last.get(self.layer[p]) == p


def compute_boundaries(ps: PointSet) -> BoundaryStructure:
    top, bottom = [], []
    high = 0
    for p in ps:
        if p.y > high:
            top.append(p)
            high = p.y
    low = ps.size + 1
    for p in reversed(ps.points):
        if p.y < low:
            bottom.append(p)
            low = p.y
    bottom.reverse()
    return BoundaryStructure(top=top, bottom=bottom, p0=ps.at(1))


def _find(nxt: list[int], i: int) -> int:
    root = i
    while nxt[root] != root:
        root = nxt[root]
    while nxt[i] != root:
        nxt[i], i = root, nxt[i]
    return root


def compute_layers(ps: PointSet, b: BoundaryStructure) -> BoundaryStructure:
    """Layer of every boundary point = its BFS distance from the leftmost point.

    BFS runs on the boundary points alone; shortest paths between boundary
    points can always be routed along alternating boundaries, so the numbers
    agree with BFS on the whole graph.
    """
    if ps.size == 1:
        p = b.p0
        return replace(b, layer={p: 0}, layer_last={0: p}, layers=[[p]])
    nt, nb = len(b.top), len(b.bottom)
    lt, lb = [-1] * nt, [-1] * nb
    free_t, free_b = list(range(nt + 1)), list(range(nb + 1))
    lt[0] = 0
    free_t[0] = 1
    queue = deque([(TOP, 0)])
    while queue:
        side, i = queue.popleft()
        if side == TOP:
            rng, dist, free, other = b.bottom_range(b.top[i]), lt[i] + 1, free_b, lb
        else:
            rng, dist, free, other = b.top_range(b.bottom[i]), lb[i] + 1, free_t, lt
        j = _find(free, rng.start)
        while j < rng.stop:
            other[j] = dist
            free[j] = j + 1
            queue.append((1 - side, j))
            j = _find(free, j + 1)
    if -1 in lt or -1 in lb:
        raise ValueError("point set is not connected; split it into components first")
    layer: dict[Point, int] = {}
    for p, k in zip(b.top, lt):
        layer[p] = k
    for p, k in zip(b.bottom, lb):
        layer[p] = k
    layers: list[list[Point]] = [[] for _ in range(max(layer.values()) + 1)]
    for p in sorted(layer, key=lambda q: q.x):
        layers[layer[p]].append(p)
    layer_last = {k: members[-1] for k, members in enumerate(layers)}
    return replace(b, layer=layer, layer_last=layer_last, layers=layers)


def next_layer_prefix(b: BoundaryStructure, p: Point) -> int:
    """How many points of layer ``L(p) + 1`` are adjacent to boundary point ``p``."""
    k = b.layer[p]
    if k + 1 >= len(b.layers):
        return 0
    nxt = b.layers[k + 1]
    if b.on_top(p):
        rng, first = b.bottom_range(p), bisect_left(b._bx, nxt[0].x)
    else:
        rng, first = b.top_range(p), bisect_left(b._tx, nxt[0].x)
    return max(0, min(rng.stop, first + len(nxt)) - max(rng.start, first))


def compute_lambda(ps: PointSet, b: BoundaryStructure) -> BoundaryStructure:
    """Greedy lambda ordering.

    Repeatedly give the next value to the lowest point of the lowest layer all
    of whose neighbours in the following layer already carry a value.  Inside
    a layer those neighbours are growing prefixes, so each layer is consumed
    left to right.
    """
    if not b.layers:
        raise ValueError("compute layers first")
    layers = b.layers
    depth = len(layers)
    if ps.size == 1:
        return replace(b, lam={b.p0: 1})
    top_first = {k: bisect_left(b._tx, m[0].x) if k % 2 == 0 else bisect_left(b._bx, m[0].x)
                 for k, m in enumerate(layers)}
    pref: list[list[int]] = []
    for k, members in enumerate(layers):
        if k + 1 == depth:
            pref.append([0] * len(members))
            continue
        s = top_first[k + 1]
        e = s + len(layers[k + 1])
        row = []
        for p in members:
            rng = b.bottom_range(p) if k % 2 == 0 else b.top_range(p)
            row.append(max(0, min(rng.stop, e) - max(rng.start, s)))
        pref.append(row)

    assigned = [0] * depth
    lam: dict[Point, int] = {}
    total = sum(len(m) for m in layers)
    value = 1
    k = 0
    while value <= total:
        if k >= depth:
            raise RuntimeError("greedy lambda assignment got stuck")
        j = assigned[k]
        if j < len(layers[k]) and (k + 1 == depth or pref[k][j] <= assigned[k + 1]):
            lam[layers[k][j]] = value
            assigned[k] += 1
            value += 1
            k = max(k - 1, 0)
        else:
            k += 1
    return replace(b, lam=lam)


def build_boundaries(ps: PointSet) -> BoundaryStructure:
    b = compute_boundaries(ps)
    b = compute_layers(ps, b)
    return compute_lambda(ps, b)


def lambda_key(layer: int, lam) -> tuple:
    """Total order on extended lambda values.

    Infinity sits above every finite value; two infinities compare by layer
    with the lower layer larger, since a layer's last point outranks every
    point of the later layers.
    """
    if lam == INFINITY:
        return (1, -layer)
    return (0, lam)


def anchor_distance(a: tuple[int, object], b: tuple[int, object]) -> int:
    """Distance between boundary points given only ``(layer, lambda)`` pairs."""
    if a[0] > b[0]:
        a, b = b, a
    if a[0] == b[0]:
        return 0 if lambda_key(*a) == lambda_key(*b) else 2
    gap = b[0] - a[0]
    return gap if lambda_key(*a) > lambda_key(*b) else gap + 2


def extreme_neighbors(ps: PointSet, b: BoundaryStructure, v) -> ExtremeNeighbors:
    br, tr = b.bottom_range(v), b.top_range(v)
    if not br or not tr:
        raise ValueError(f"{tuple(v)} has no neighbour on the "
                         f"{'bottom' if not br else 'top'} boundary")
    return ExtremeNeighbors(b.bottom[br.start], b.bottom[br.stop - 1],
                            b.top[tr.start], b.top[tr.stop - 1])


def layer_span(b: BoundaryStructure, ext: ExtremeNeighbors) -> list[int]:
    """Distinct layers touched by a vertex's boundary neighbours."""
    return sorted({b.layer[p] for p in ext})


def boundary_index(b: BoundaryStructure, p: Point) -> Optional[tuple[int, int]]:
    """``(side, index)`` of a boundary point, top preferred."""
    if b.on_top(p):
        return TOP, bisect_left(b._tx, p.x)
    if b.on_bottom(p):
        return BOTTOM, bisect_left(b._bx, p.x)
    return None
