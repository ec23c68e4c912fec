"""Vectorised decoding of many label pairs at once.

Same decision procedure as :func:`permlabel.scheme.decode_views`, run with numpy
over arrays of parsed label fields.  Used by the verification harness; the
scalar decoders stay the reference and the tests compare the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .boundaries import INFINITY
from .scheme import LabelView

UNREACHABLE_CODE = -1
ANCHORS = ("bfirst", "blast", "tfirst", "tlast")


@dataclass
class ViewArrays:
    comp: np.ndarray
    layer: dict[str, np.ndarray]
    lam: dict[str, np.ndarray]  # infinity encoded above every finite value
    lex: dict[str, np.ndarray]  # (layer, lam) folded into one integer
    ident: np.ndarray  # equal ids <=> identical labels
    coords: Optional[np.ndarray] = None

    @classmethod
    def build(cls, views: Sequence[LabelView], bits: Sequence[str]) -> ViewArrays:
        finite = [a.lam for v in views for a in v[1:5] if a.lam != INFINITY]
        top_layer = max(a.layer for v in views for a in v[1:5])
        inf_base = max(finite, default=0) + 1
        span = inf_base + top_layer + 2
        layer, lam, lex = {}, {}, {}
        for k, name in enumerate(ANCHORS, start=1):
            ls = np.array([v[k].layer for v in views], dtype=np.int64)
            raw = [v[k].lam for v in views]
            codes = np.array([inf_base + top_layer - l if x == INFINITY else x
                              for x, l in zip(raw, ls)], dtype=np.int64)
            layer[name], lam[name] = ls, codes
            lex[name] = ls * span + codes
        ids = {}
        ident = np.array([ids.setdefault(b, len(ids)) for b in bits], dtype=np.int64)
        coords = None
        if views and views[0].coords is not None:
            coords = np.array([v.coords for v in views], dtype=np.int64)
        return cls(np.array([v.component for v in views], dtype=np.int64), layer, lam, lex,
                   ident, coords)


def _anchor_distance(la, ka, lb, kb):
    swap = la > lb
    la, lb, ka, kb = (np.where(swap, lb, la), np.where(swap, la, lb),
                      np.where(swap, kb, ka), np.where(swap, ka, kb))
    gap = lb - la
    return np.where(gap == 0, np.where(ka == kb, 0, 2), gap + np.where(ka > kb, 0, 2))


def decode_pairs(va: ViewArrays, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Distances for label pairs ``(i[k], j[k])``; UNREACHABLE becomes -1."""
    lex, lay, lam = va.lex, va.layer, va.lam

    def lx(name, idx):
        return lex[name][idx]

    if va.coords is not None:
        dx = va.coords[i, 0] - va.coords[j, 0]
        dy = va.coords[i, 1] - va.coords[j, 1]
        adjacent = dx * dy < 0
    else:
        def inside(a, b):
            bottom = ((lx("bfirst", a) < lx("bfirst", b)) & (lx("bfirst", b) <= lx("blast", b))
                      & (lx("blast", b) < lx("blast", a)))
            top = ((lx("tfirst", a) < lx("tfirst", b)) & (lx("tfirst", b) <= lx("tlast", b))
                   & (lx("tlast", b) < lx("tlast", a)))
            return bottom | top
        adjacent = inside(i, j) | inside(j, i)
    meet = (((lx("bfirst", i) <= lx("blast", j)) & (lx("bfirst", j) <= lx("blast", i)))
            | ((lx("tfirst", i) <= lx("tlast", j)) & (lx("tfirst", j) <= lx("tlast", i))))
    far = None
    for s, t in ((i, j), (j, i)):
        for a in ("blast", "tlast"):
            for b in ("bfirst", "tfirst"):
                d = _anchor_distance(lay[a][s], lam[a][s], lay[b][t], lam[b][t])
                far = d if far is None else np.minimum(far, d)
    out = np.where(meet, 2, far + 2)
    out = np.where(adjacent, 1, out)
    out = np.where(va.ident[i] == va.ident[j], 0, out)
    out = np.where(va.comp[i] != va.comp[j], UNREACHABLE_CODE, out)
    return out
