"""Auxiliary point insertion.

Every original vertex is first pushed off the boundaries with one clearing
point, then receives four auxiliary boundary points (two per boundary) placed
an infinitesimal step away from existing coordinates.  After the pass no
original vertex lies on a boundary and adjacency between original vertices is
decided by strict containment of their extreme-neighbour ranges.

Coordinates live on two order-maintained integer axes while points are
inserted.  A point placed just after coordinate ``c`` takes a key strictly
between ``c`` and the next key present on that axis (just before: between the
previous key and ``c``), so later insertions at the same spot land closer to
``c``, which is what placing a point "epsilon away" in the current set means.
Keys start ``2**SPACING_BITS`` apart; when a gap is used up, a window of keys
around it is spread out evenly, which keeps the order.  Keys are renumbered to ``1..N`` at the end.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from sortedcontainers import SortedList

from .boundaries import ExtremeNeighbors, compute_boundaries
from .graph import Point, PointSet, component_ranges


class Origin(enum.Enum):
    ORIGINAL = "original"
    BOUNDARY_CLEAR = "clear"
    AUX_B = "b"
    AUX_B2 = "b'"
    AUX_T = "t"
    AUX_T2 = "t'"


@dataclass(frozen=True)
class AugmentedSet:
    points: PointSet
    origin: dict[Point, tuple[Origin, int]]  # tag and the original vertex it belongs to
    back_map: dict[int, Point]  # original x -> point in ``points``
    source: PointSet

    @property
    def originals(self) -> list[Point]:
        return [self.back_map[x] for x in range(1, self.source.size + 1)]


SPACING_BITS = 256
STEP = 1 << 64  # largest move away from an anchor; keeps room for later neighbours
MIN_GAP = 1 << 128  # spacing a relabelled window must reach


class _Axis:
    """All keys of one coordinate axis in sorted order, with their owners."""

    def __init__(self, keys):
        self.keys = SortedList(keys)
        self.owner = {k: pid for pid, k in enumerate(keys)}

    def add(self, key, pid):
        self.keys.add(key)
        self.owner[key] = pid

    def after(self, key: int) -> Optional[int]:
        i = self.keys.bisect_right(key)
        nxt = self.keys[i] if i < len(self.keys) else key + (2 << SPACING_BITS)
        return key + min((nxt - key) // 2, STEP) if nxt - key >= 2 else None

    def before(self, key: int) -> Optional[int]:
        i = self.keys.bisect_left(key)
        prev = self.keys[i - 1] if i else key - (2 << SPACING_BITS)
        return key - min((key - prev) // 2, STEP) if key - prev >= 2 else None

    def spread(self, key: int) -> dict[int, int]:
        """Evenly relabel the smallest window around ``key`` that gets ``MIN_GAP`` spacing.

        Returns the old -> new key map; order is unchanged.
        """
        keys, n = self.keys, len(self.keys)
        i = keys.bisect_left(key)
        w = 4
        while True:
            lo, hi = max(0, i - w), min(n, i + w + 1)
            if lo == 0 and hi == n:
                left, step = 0, 1 << SPACING_BITS
                break
            left = keys[lo - 1] if lo else keys[0] - (n << SPACING_BITS)
            right = keys[hi] if hi < n else keys[-1] + (n << SPACING_BITS)
            step = (right - left) // (hi - lo + 1)
            if step >= MIN_GAP:
                break
            w *= 2
        old = list(keys.islice(lo, hi))
        moved = {k: left + step * (j + 1) for j, k in enumerate(old)}
        del keys[lo:hi]
        keys.update(moved.values())
        owners = [self.owner.pop(k) for k in old]
        self.owner.update(zip(moved.values(), owners))
        return moved


class _Staircase:
    """One boundary, kept sorted on both axes at once."""

    def __init__(self, pids, xs, ys):
        self.xs = SortedList(xs[p] for p in pids)
        self.ys = SortedList(ys[p] for p in pids)
        self.by_x = {xs[p]: p for p in pids}

    def add(self, pid, xk, yk):
        self.xs.add(xk)
        self.ys.add(yk)
        self.by_x[xk] = pid

    def remove(self, xk, yk):
        self.xs.remove(xk)
        self.ys.remove(yk)
        del self.by_x[xk]

    def first_after_x(self, xk):
        i = self.xs.bisect_right(xk)
        return self.by_x[self.xs[i]] if i < len(self.xs) else None

    def last_before_x(self, xk):
        i = self.xs.bisect_left(xk)
        return self.by_x[self.xs[i - 1]] if i else None

    def first_above_y(self, yk):
        i = self.ys.bisect_right(yk)
        return self.by_x[self.xs[i]] if i < len(self.ys) else None

    def last_below_y(self, yk):
        i = self.ys.bisect_left(yk)
        return self.by_x[self.xs[i - 1]] if i else None


class _Builder:
    def __init__(self, ps: PointSet):
        self.xs = [x << SPACING_BITS for x in range(1, ps.size + 1)]
        self.ys = [y << SPACING_BITS for y in ps.ys]
        self.tags = [(Origin.ORIGINAL, x) for x in range(1, ps.size + 1)]
        self.x_axis, self.y_axis = _Axis(self.xs), _Axis(self.ys)
        self.relabelled = 0
        b = compute_boundaries(ps)
        self.top = _Staircase([p.x - 1 for p in b.top], self.xs, self.ys)
        self.bottom = _Staircase([p.x - 1 for p in b.bottom], self.xs, self.ys)

    def _stair_of(self, pid):
        for stair in (self.top, self.bottom):
            if stair.by_x.get(self.xs[pid]) == pid:
                return stair
        return None

    def _relabel(self, axis: _Axis, key: int) -> None:
        self.relabelled += 1
        keys = self.xs if axis is self.x_axis else self.ys
        moved = [(axis.owner[new], new) for new in axis.spread(key).values()]
        # old and new keys may coincide, so detach everything before rewriting
        stairs = [self._stair_of(pid) for pid, _ in moved]
        for (pid, _), stair in zip(moved, stairs):
            if stair is not None:
                stair.remove(self.xs[pid], self.ys[pid])
        for pid, new in moved:
            keys[pid] = new
        for (pid, _), stair in zip(moved, stairs):
            if stair is not None:
                stair.add(pid, self.xs[pid], self.ys[pid])

    def _key(self, axis: _Axis, keys: list, anchor: int, after: bool) -> int:
        k = (axis.after if after else axis.before)(keys[anchor])
        if k is None:
            self._relabel(axis, keys[anchor])
            k = (axis.after if after else axis.before)(keys[anchor])
        return k

    def place(self, x_anchor, x_after, y_anchor, y_after):
        """Keys for a new point placed next to the given anchor points."""
        return (self._key(self.x_axis, self.xs, x_anchor, x_after),
                self._key(self.y_axis, self.ys, y_anchor, y_after))

    def new_point(self, xk, yk, tag, owner, stair=None):
        pid = len(self.xs)
        self.xs.append(xk)
        self.ys.append(yk)
        self.x_axis.add(xk, pid)
        self.y_axis.add(yk, pid)
        self.tags.append((tag, owner))
        if stair is not None:
            stair.add(pid, xk, yk)
        return pid

    def on_bottom(self, v) -> bool:
        return self.bottom.by_x.get(self.xs[v]) == v

    def on_top(self, v) -> bool:
        return self.top.by_x.get(self.xs[v]) == v

    def extremes(self, v):
        vx, vy = self.xs[v], self.ys[v]
        bfirst, blast = self.bottom.first_after_x(vx), self.bottom.last_below_y(vy)
        tfirst, tlast = self.top.first_above_y(vy), self.top.last_before_x(vx)
        if bfirst is None or blast is None or self.xs[bfirst] > self.xs[blast]:
            raise ValueError(f"vertex {v + 1} has no bottom neighbour")
        if tfirst is None or tlast is None or self.xs[tfirst] > self.xs[tlast]:
            raise ValueError(f"vertex {v + 1} has no top neighbour")
        return bfirst, blast, tfirst, tlast

    def clear(self, v):
        owner = v + 1
        if self.on_bottom(v):
            xk, yk = self.place(v, True, v, False)
            self.bottom.remove(self.xs[v], self.ys[v])
            self.new_point(xk, yk, Origin.BOUNDARY_CLEAR, owner, self.bottom)
        if self.on_top(v):
            xk, yk = self.place(v, False, v, True)
            self.top.remove(self.xs[v], self.ys[v])
            self.new_point(xk, yk, Origin.BOUNDARY_CLEAR, owner, self.top)

    def add_auxiliary(self, v):
        owner = v + 1
        bfirst, blast, tfirst, tlast = self.extremes(v)
        self.new_point(*self.place(v, False, bfirst, False), Origin.AUX_B, owner, self.bottom)
        self.new_point(*self.place(blast, True, v, True), Origin.AUX_B2, owner, self.bottom)
        self.new_point(*self.place(tfirst, False, v, False), Origin.AUX_T, owner, self.top)
        self.new_point(*self.place(v, True, tlast, True), Origin.AUX_T2, owner, self.top)

    def finish(self, ps: PointSet) -> AugmentedSet:
        n = len(self.xs)
        xrank = {k: i for i, k in enumerate(sorted(self.xs), start=1)}
        yrank = {k: i for i, k in enumerate(sorted(self.ys), start=1)}
        ys = [0] * n
        pts = []
        for xk, yk in zip(self.xs, self.ys):
            p = Point(xrank[xk], yrank[yk])
            ys[p.x - 1] = p.y
            pts.append(p)
        origin = dict(zip(pts, self.tags))
        back_map = {x: pts[x - 1] for x in range(1, ps.size + 1)}
        return AugmentedSet(PointSet(tuple(ys)), origin, back_map, ps)


def augment(ps: PointSet) -> AugmentedSet:
    """Insert clearing and auxiliary points into a connected point set.

    Clearing points go in first, one per original boundary vertex, so that every
    original vertex has neighbours on both boundaries.  Then vertices are taken
    by increasing x and each gets ``v_b, v_b', v_t, v_t'`` computed from its
    extreme neighbours in the set as it stands at that moment.
    """
    if ps.size < 2:
        raise ValueError("augmentation needs at least two points")
    if len(component_ranges(ps)) != 1:
        raise ValueError("point set is not connected; split it into components first")
    builder = _Builder(ps)
    for v in range(ps.size):
        builder.clear(v)
    for v in range(ps.size):
        builder.add_auxiliary(v)
    return builder.finish(ps)


def check_containment(a: ExtremeNeighbors, b: ExtremeNeighbors, side: str = "any") -> bool:
    """True when ``b``'s boundary range sits strictly inside ``a``'s.

    On the bottom boundary this says the owner of ``b`` is in the bottom-right
    quadrant of the owner of ``a``; on the top boundary, in the top-left one.
    Boundary order is x order.
    """
    bottom = a.bfirst.x < b.bfirst.x <= b.blast.x < a.blast.x
    top = a.tfirst.x < b.tfirst.x <= b.tlast.x < a.tlast.x
    if side == "bottom":
        return bottom
    if side == "top":
        return top
    return bottom or top
