"""The 3 log n distance labeling scheme.

A vertex label keeps the layers of its four extreme boundary neighbours
(one full layer number plus three 2-bit offsets) and only two lambda values.
``y_val`` stands in for both lambda(Blast) and lambda(Tfirst), ``x_val`` for
lambda(Tlast) and lambda(Bfirst).  When Blast (resp. Tlast) is the last point of
its layer the flag ``binf`` (``tinf``) is set, Blast is read as infinity and
``y_val`` (``x_val``) holds the exact lambda of the other anchor.  Otherwise the
value is a fresh number squeezed just below the smallest lambda that exceeds
lambda(Blast) among boundary points above the vertex (lambda(Tlast), points to
the right, for ``x_val``).

Decoding needs nothing but the two bit strings.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .augment import AugmentedSet, augment
from .boundaries import (INFINITY, BoundaryStructure, ExtremeNeighbors, anchor_distance,
                         build_boundaries, extreme_neighbors, lambda_key)
from .codec import BitReader, BitWriter, LabelFormatError, gamma_length, WIDTH_FIELD
from .graph import UNREACHABLE, ComponentBlock, Point, PointSet, component_blocks, from_permutation

Y_EVENT, X_EVENT = 0, 1


# --- per-component analysis shared by every scheme --------------------------

@dataclass(frozen=True)
class ComponentAnalysis:
    """Augmented point set, its boundary structure and the extremes of each vertex."""

    source: PointSet
    aug: Optional[AugmentedSet]
    b: Optional[BoundaryStructure]
    extremes: dict[int, ExtremeNeighbors]  # keyed by vertex x in ``source``

    @property
    def trivial(self) -> bool:
        return self.aug is None

    def vertex(self, x: int) -> Point:
        return self.aug.back_map[x]


def analyze_component(ps: PointSet) -> ComponentAnalysis:
    if ps.size == 1:
        return ComponentAnalysis(ps, None, None, {})
    aug = augment(ps)
    b = build_boundaries(aug.points)
    ext = {x: extreme_neighbors(aug.points, b, p) for x, p in aug.back_map.items()}
    return ComponentAnalysis(ps, aug, b, ext)


def pack_layers(b: BoundaryStructure, ext: ExtremeNeighbors) -> tuple[int, int, int, int]:
    """Layer of Bfirst plus offsets of Blast, Tfirst, Tlast relative to it."""
    base = b.layer[ext.bfirst]
    deltas = (b.layer[ext.blast] - base, b.layer[ext.tfirst] - base, b.layer[ext.tlast] - base)
    if any(not -1 <= d <= 2 for d in deltas):
        raise ValueError(f"extreme neighbours span too many layers: {deltas}")
    return (base, *deltas)


# --- collapsed values --------------------------------------------------------

@dataclass(frozen=True)
class CollapsedValue:
    """A stored lambda: either a real one or a fresh value just below ``lam``.

    Fresh values with the same anchor are ordered y'-events first, then by the
    owner's coordinate, so all of them are distinct.
    """

    fresh: bool
    lam: int
    event: int = Y_EVENT
    coord: int = 0

    def key(self) -> tuple:
        if self.fresh:
            return (self.lam, -1, self.event, self.coord)
        return (self.lam, 0, 0, 0)


class Collapsed(NamedTuple):
    binf: int
    y_val: CollapsedValue
    tinf: int
    x_val: CollapsedValue


def collapse(v: Point, b: BoundaryStructure, ext: Optional[ExtremeNeighbors] = None) -> Collapsed:
    """Collapse the four anchor lambdas of ``v`` into two values (direct scan)."""
    if ext is None:
        ext = extreme_neighbors(None, b, v)
    lam = b.lam
    if b.is_last(ext.blast):
        binf, y_val = 1, CollapsedValue(False, lam[ext.tfirst])
    else:
        floor = lam[ext.blast]
        cands = [lam[w] for w in lam if w.y > v.y and lam[w] > floor]
        if not cands:
            raise RuntimeError(f"no anchor above {tuple(v)} for y'")
        binf, y_val = 0, CollapsedValue(True, min(cands), Y_EVENT, v.y)
    if b.is_last(ext.tlast):
        tinf, x_val = 1, CollapsedValue(False, lam[ext.bfirst])
    else:
        floor = lam[ext.tlast]
        cands = [lam[w] for w in lam if w.x > v.x and lam[w] > floor]
        if not cands:
            raise RuntimeError(f"no anchor right of {tuple(v)} for x'")
        tinf, x_val = 0, CollapsedValue(True, min(cands), X_EVENT, v.x)
    return Collapsed(binf, y_val, tinf, x_val)


class _Fenwick:
    """Presence counts over ``1..size`` with successor queries."""

    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)
        self.total = 0
        self.top = 1 << size.bit_length()

    def add(self, i: int) -> None:
        self.total += 1
        while i <= self.size:
            self.tree[i] += 1
            i += i & -i

    def prefix(self, i: int) -> int:
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & -i
        return s

    def successor(self, t: int) -> Optional[int]:
        """Smallest present index greater than ``t``."""
        k = self.prefix(t) + 1
        if k > self.total:
            return None
        pos, step = 0, self.top
        while step:
            nxt = pos + step
            if nxt <= self.size and self.tree[nxt] < k:
                pos = nxt
                k -= self.tree[nxt]
            step >>= 1
        return pos + 1


def _min_lambda_above(b: BoundaryStructure, queries: list[tuple[int, int, int]], axis: int) -> dict:
    """For each ``(vid, coord, floor)``: min lambda > floor over boundary points
    whose coordinate on ``axis`` exceeds ``coord``."""
    pts = sorted(b.lam, key=lambda p: p[axis], reverse=True)
    fw = _Fenwick(len(pts))
    out = {}
    i = 0
    for vid, coord, floor in sorted(queries, key=lambda q: q[1], reverse=True):
        while i < len(pts) and pts[i][axis] > coord:
            fw.add(b.lam[pts[i]])
            i += 1
        out[vid] = fw.successor(floor)
    return out


def collapse_all(an: ComponentAnalysis) -> dict[int, Collapsed]:
    """Same result as :func:`collapse` for every vertex, in O(n log n)."""
    b, lam = an.b, an.b.lam
    yq, xq = [], []
    for x, ext in an.extremes.items():
        v = an.vertex(x)
        if not b.is_last(ext.blast):
            yq.append((x, v.y, lam[ext.blast]))
        if not b.is_last(ext.tlast):
            xq.append((x, v.x, lam[ext.tlast]))
    ya = _min_lambda_above(b, yq, 1)
    xa = _min_lambda_above(b, xq, 0)
    out = {}
    for x, ext in an.extremes.items():
        v = an.vertex(x)
        if x in ya:
            if ya[x] is None:
                raise RuntimeError(f"no anchor above {tuple(v)} for y'")
            binf, y_val = 0, CollapsedValue(True, ya[x], Y_EVENT, v.y)
        else:
            binf, y_val = 1, CollapsedValue(False, lam[ext.tfirst])
        if x in xa:
            if xa[x] is None:
                raise RuntimeError(f"no anchor right of {tuple(v)} for x'")
            tinf, x_val = 0, CollapsedValue(True, xa[x], X_EVENT, v.x)
        else:
            tinf, x_val = 1, CollapsedValue(False, lam[ext.bfirst])
        out[x] = Collapsed(binf, y_val, tinf, x_val)
    return out


# --- labels --------------------------------------------------------------------

@dataclass(frozen=True)
class LabelCodec:
    width_L: int
    width_V: int

    def body_length(self) -> int:
        return 2 * WIDTH_FIELD + self.width_L + 6 + 2 + 2 * self.width_V


@dataclass(frozen=True)
class VertexLabel:
    component_index: int
    l_bfirst: int
    d_blast: int
    d_tfirst: int
    d_tlast: int
    binf: int
    y_val: int
    tinf: int
    x_val: int

    @property
    def layers(self) -> tuple[int, int, int, int]:
        """Layers of Bfirst, Blast, Tfirst, Tlast."""
        base = self.l_bfirst
        return base, base + self.d_blast, base + self.d_tfirst, base + self.d_tlast


def label_length(label: VertexLabel, codec: LabelCodec) -> int:
    return gamma_length(label.component_index + 1) + codec.body_length()


def write_offset(w: BitWriter, delta: int) -> None:
    # 2-bit field holds delta + 1, delta in {-1, 0, 1, 2}
    w.write(delta + 1, 2)


def serialize_label(label: VertexLabel, codec: LabelCodec) -> str:
    w = BitWriter()
    w.write_gamma(label.component_index + 1)
    w.write_width(codec.width_L)
    w.write_width(codec.width_V)
    w.write(label.l_bfirst, codec.width_L)
    for d in (label.d_blast, label.d_tfirst, label.d_tlast):
        write_offset(w, d)
    w.write(label.binf, 1)
    w.write(label.y_val, codec.width_V)
    w.write(label.tinf, 1)
    w.write(label.x_val, codec.width_V)
    return w.bits()


def deserialize_label(bits: str) -> tuple[VertexLabel, LabelCodec]:
    r = BitReader(bits)
    comp = r.read_gamma() - 1
    codec = LabelCodec(r.read(WIDTH_FIELD), r.read(WIDTH_FIELD))
    base = r.read(codec.width_L)
    d1, d2, d3 = (r.read(2) - 1 for _ in range(3))
    binf = r.read(1)
    y_val = r.read(codec.width_V)
    tinf = r.read(1)
    x_val = r.read(codec.width_V)
    r.done()
    return VertexLabel(comp, base, d1, d2, d3, binf, y_val, tinf, x_val), codec


def rank_values(values) -> dict:
    """Order-preserving map of collapsed values onto ``0..k-1``."""
    keys = sorted({v.key() for v in values})
    return {k: i for i, k in enumerate(keys)}


def encode_component(ps: PointSet, index: int,
                     an: Optional[ComponentAnalysis] = None) -> tuple[list[tuple[int, VertexLabel]], LabelCodec]:
    """Labels for a connected point set; vertex ids are x coordinates of ``ps``."""
    if an is None:
        an = analyze_component(ps)
    if an.trivial:
        return [(1, VertexLabel(index, 0, 0, 0, 0, 0, 0, 0, 0))], LabelCodec(0, 0)
    col = collapse_all(an)
    rank = rank_values([c.y_val for c in col.values()] + [c.x_val for c in col.values()])
    packed = {x: pack_layers(an.b, ext) for x, ext in an.extremes.items()}
    codec = LabelCodec(max(p[0] for p in packed.values()).bit_length(),
                       (len(rank) - 1).bit_length())
    labels = []
    for x in sorted(an.extremes):
        c = col[x]
        labels.append((x, VertexLabel(index, *packed[x], c.binf, rank[c.y_val.key()],
                                      c.tinf, rank[c.x_val.key()])))
    return labels, codec


def encode(pi: Sequence[int]) -> list[tuple[int, str]]:
    """Bit labels for every vertex (permutation value) of the graph of ``pi``."""
    out = []
    for index, block in enumerate(component_blocks(from_permutation(pi))):
        labels, codec = encode_component(block.points, index)
        out += [(block.parent_x(x), serialize_label(lab, codec)) for x, lab in labels]
    out.sort()
    return out


# --- decoding ------------------------------------------------------------------

class Anchor(NamedTuple):
    layer: int
    lam: object  # int or INFINITY

    def key(self) -> tuple:
        return (self.layer, lambda_key(self.layer, self.lam))


class LabelView(NamedTuple):
    """What the decoder knows about one vertex."""

    component: int
    bfirst: Anchor
    blast: Anchor
    tfirst: Anchor
    tlast: Anchor
    coords: Optional[tuple[int, int]] = None


def view_of(label: VertexLabel) -> LabelView:
    lb, ll, tf, tl = label.layers
    return LabelView(
        label.component_index,
        Anchor(lb, label.x_val),
        Anchor(ll, INFINITY if label.binf else label.y_val),
        Anchor(tf, label.y_val),
        Anchor(tl, INFINITY if label.tinf else label.x_val),
    )


def contains(a: LabelView, b: LabelView) -> bool:
    """``b``'s range strictly inside ``a``'s on some boundary."""
    if a.bfirst.key() < b.bfirst.key() <= b.blast.key() < a.blast.key():
        return True
    return a.tfirst.key() < b.tfirst.key() <= b.tlast.key() < a.tlast.key()


def intersects(a: LabelView, b: LabelView) -> bool:
    if a.bfirst.key() <= b.blast.key() and b.bfirst.key() <= a.blast.key():
        return True
    return a.tfirst.key() <= b.tlast.key() and b.tfirst.key() <= a.tlast.key()


def far_distance(a: LabelView, b: LabelView) -> int:
    best = min(
        anchor_distance(i, j)
        for s, t in ((a, b), (b, a))
        for i in (s.blast, s.tlast)
        for j in (t.bfirst, t.tfirst)
    )
    return best + 2


def decode_views(a: LabelView, b: LabelView, adjacent=None):
    """Distance from two views; ``adjacent`` overrides the containment test."""
    if a.component != b.component:
        return UNREACHABLE
    if adjacent is None:
        adjacent = contains(a, b) or contains(b, a)
    if adjacent:
        return 1
    if intersects(a, b):
        return 2
    return far_distance(a, b)


def decode_distance(la: str, lb: str):
    """Exact distance between two vertices, or UNREACHABLE, from their labels alone."""
    if la == lb:
        deserialize_label(la)
        return 0
    return decode_views(view_of(deserialize_label(la)[0]), view_of(deserialize_label(lb)[0]))


__all__ = [
    "Anchor", "Collapsed", "CollapsedValue", "ComponentAnalysis", "LabelCodec", "LabelFormatError",
    "LabelView", "VertexLabel", "analyze_component", "collapse", "collapse_all", "decode_distance",
    "decode_views", "deserialize_label", "encode", "encode_component", "label_length",
    "serialize_label", "view_of",
]
