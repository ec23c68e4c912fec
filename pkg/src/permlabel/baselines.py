"""The two intermediate schemes, kept as cross-checks and size baselines.

L7 stores the vertex coordinates in the augmented set plus the real
``(layer, lambda)`` of all four extreme neighbours; adjacency is a quadrant
test on coordinates.  L5 drops the coordinates and decides adjacency by range
containment.  Both share augmentation and boundary code with L3, so any
disagreement points at the collapsing step.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .codec import BitReader, BitWriter, WIDTH_FIELD, gamma_length
from .graph import from_permutation, component_blocks, is_adjacent
from .scheme import (Anchor, ComponentAnalysis, LabelView, analyze_component, decode_views,
                     pack_layers, write_offset)


@dataclass(frozen=True)
class Label5:
    component_index: int
    l_bfirst: int
    d_blast: int
    d_tfirst: int
    d_tlast: int
    lambdas: tuple[int, int, int, int]  # Bfirst, Blast, Tfirst, Tlast
    width_L: int
    width_V: int

    def view(self) -> LabelView:
        base = self.l_bfirst
        layers = (base, base + self.d_blast, base + self.d_tfirst, base + self.d_tlast)
        return LabelView(self.component_index, *(Anchor(l, v) for l, v in zip(layers, self.lambdas)))


@dataclass(frozen=True)
class Label7(Label5):
    x: int = 0
    y: int = 0
    width_C: int = 0

    def view(self) -> LabelView:
        return super().view()._replace(coords=(self.x, self.y))


def _fields(an: ComponentAnalysis):
    b = an.b
    for x in sorted(an.extremes):
        ext = an.extremes[x]
        yield x, pack_layers(b, ext), tuple(b.lam[p] for p in ext)


def _write_common(w: BitWriter, lab: Label5) -> None:
    w.write(lab.l_bfirst, lab.width_L)
    for d in (lab.d_blast, lab.d_tfirst, lab.d_tlast):
        write_offset(w, d)


def serialize5(lab: Label5) -> str:
    w = BitWriter()
    w.write_gamma(lab.component_index + 1)
    w.write_width(lab.width_L)
    w.write_width(lab.width_V)
    _write_common(w, lab)
    for v in lab.lambdas:
        w.write(v, lab.width_V)
    return w.bits()


def deserialize5(bits: str) -> Label5:
    r = BitReader(bits)
    comp = r.read_gamma() - 1
    wl, wv = r.read(WIDTH_FIELD), r.read(WIDTH_FIELD)
    base = r.read(wl)
    d = [r.read(2) - 1 for _ in range(3)]
    lams = tuple(r.read(wv) for _ in range(4))
    r.done()
    return Label5(comp, base, *d, lams, wl, wv)


def serialize7(lab: Label7) -> str:
    w = BitWriter()
    w.write_gamma(lab.component_index + 1)
    w.write_width(lab.width_L)
    w.write_width(lab.width_C)
    w.write_width(lab.width_V)
    _write_common(w, lab)
    w.write(lab.x, lab.width_C)
    w.write(lab.y, lab.width_C)
    for v in lab.lambdas:
        w.write(v, lab.width_V)
    return w.bits()


def deserialize7(bits: str) -> Label7:
    r = BitReader(bits)
    comp = r.read_gamma() - 1
    wl, wc, wv = r.read(WIDTH_FIELD), r.read(WIDTH_FIELD), r.read(WIDTH_FIELD)
    base = r.read(wl)
    d = [r.read(2) - 1 for _ in range(3)]
    x, y = r.read(wc), r.read(wc)
    lams = tuple(r.read(wv) for _ in range(4))
    r.done()
    return Label7(comp, base, *d, lams, wl, wv, x, y, wc)


def label5_component(an: ComponentAnalysis, index: int) -> list[tuple[int, Label5]]:
    if an.trivial:
        return [(1, Label5(index, 0, 0, 0, 0, (0, 0, 0, 0), 0, 0))]
    rows = list(_fields(an))
    wl = max(r[1][0] for r in rows).bit_length()
    wv = max(max(r[2]) for r in rows).bit_length()
    return [(x, Label5(index, *packed, lams, wl, wv)) for x, packed, lams in rows]


def label7_component(an: ComponentAnalysis, index: int) -> list[tuple[int, Label7]]:
    if an.trivial:
        return [(1, Label7(index, 0, 0, 0, 0, (0, 0, 0, 0), 0, 0))]
    wc = an.aug.points.size.bit_length()
    out = []
    for x, lab in label5_component(an, index):
        p = an.vertex(x)
        out.append((x, Label7(index, lab.l_bfirst, lab.d_blast, lab.d_tfirst, lab.d_tlast,
                              lab.lambdas, lab.width_L, lab.width_V, p.x, p.y, wc)))
    return out


def _encode(pi: Sequence[int], build, serialize, analyses=None):
    out = []
    blocks = component_blocks(from_permutation(pi))
    for index, block in enumerate(blocks):
        an = analyses[index] if analyses is not None else analyze_component(block.points)
        out += [(block.parent_x(x), serialize(lab)) for x, lab in build(an, index)]
    out.sort()
    return out


def encode5(pi: Sequence[int], analyses: Optional[list[ComponentAnalysis]] = None) -> list[tuple[int, str]]:
    return _encode(pi, label5_component, serialize5, analyses)


def encode7(pi: Sequence[int], analyses: Optional[list[ComponentAnalysis]] = None) -> list[tuple[int, str]]:
    return _encode(pi, label7_component, serialize7, analyses)


def decode5(la: str, lb: str):
    a, b = deserialize5(la), deserialize5(lb)
    if la == lb:
        return 0
    return decode_views(a.view(), b.view())


def decode7(la: str, lb: str):
    a, b = deserialize7(la), deserialize7(lb)
    if la == lb:
        return 0
    return decode_views(a.view(), b.view(), adjacent=is_adjacent((a.x, a.y), (b.x, b.y)))


def label5_length(lab: Label5) -> int:
    return (gamma_length(lab.component_index + 1) + 2 * WIDTH_FIELD + lab.width_L + 6
            + 4 * lab.width_V)


def label7_length(lab: Label7) -> int:
    return label5_length(lab) + WIDTH_FIELD + 2 * lab.width_C
