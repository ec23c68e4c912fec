"""Static SVG pictures of a point set, its boundaries and layers.

One panel per connected component, left to right.  Boundary points carry a
``layer/lambda`` annotation; with ``augmented=True`` each panel shows the
augmented component with points coloured by origin.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Optional, Sequence

from .augment import Origin, augment
from .boundaries import BoundaryStructure, build_boundaries
from .graph import PointSet, component_blocks, from_permutation

TOP_COLOUR = "#1f77b4"
BOTTOM_COLOUR = "#d62728"
BOTH_COLOUR = "#9467bd"
INTERIOR_COLOUR = "#7f7f7f"
ORIGIN_COLOURS = {
    Origin.ORIGINAL: "#000000",
    Origin.BOUNDARY_CLEAR: "#ff7f0e",
    Origin.AUX_B: "#d62728",
    Origin.AUX_B2: "#e377c2",
    Origin.AUX_T: "#1f77b4",
    Origin.AUX_T2: "#17becf",
}


@dataclass(frozen=True)
class RenderConfig:
    panel: float = 480.0  # pixel size of the largest panel
    max_cell: float = 36.0
    margin: float = 28.0
    annotate_limit: int = 160  # skip text labels on bigger components


def _panel(root, ps: PointSet, b: Optional[BoundaryStructure], colours, left: float,
           cell: float, cfg: RenderConfig, title: str) -> float:
    size = ps.size
    side = cell * (size + 1)
    g = ET.SubElement(root, "g", transform=f"translate({left:.1f},{cfg.margin:.1f})")
    ET.SubElement(g, "rect", x="0", y="0", width=f"{side:.1f}", height=f"{side:.1f}",
                  fill="none", stroke="#cccccc")
    ET.SubElement(g, "text", x="0", y="-8", fill="#333333").text = title

    def at(p):
        return cell * p.x, side - cell * p.y

    if b is not None:
        for pts, colour in ((b.top, TOP_COLOUR), (b.bottom, BOTTOM_COLOUR)):
            if len(pts) > 1:
                coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in map(at, pts))
                ET.SubElement(g, "polyline", points=coords, fill="none", stroke=colour,
                              **{"stroke-width": "1.5", "stroke-opacity": "0.6"})
    radius = max(1.5, min(5.0, cell / 4))
    for p in ps.points:
        x, y = at(p)
        ET.SubElement(g, "circle", cx=f"{x:.1f}", cy=f"{y:.1f}", r=f"{radius:.1f}",
                      fill=colours(p))
        if b is not None and p in b.layer and size <= cfg.annotate_limit:
            ET.SubElement(g, "text", x=f"{x + radius + 1:.1f}", y=f"{y - radius - 1:.1f}",
                          fill="#333333", **{"font-size": "9"}).text = f"{b.layer[p]}/{b.lam[p]}"
    return side


def render_svg(pi: Sequence[int], augmented: bool = False,
               config: Optional[RenderConfig] = None) -> str:
    cfg = config or RenderConfig()
    blocks = sorted(component_blocks(from_permutation(pi)), key=lambda blk: blk.start)
    panels = []
    for blk in blocks:
        ps, b, colours = blk.points, None, None
        if augmented and ps.size > 1:
            aug = augment(ps)
            ps = aug.points
            colours = (lambda tags: lambda p: ORIGIN_COLOURS[tags[p][0]])(aug.origin)
        if ps.size > 1:
            b = build_boundaries(ps)
        if colours is None:
            colours = _boundary_colours(b)
        title = f"vertices {blk.start}..{blk.start + blk.size - 1}"
        panels.append((ps, b, colours, title))
    biggest = max(ps.size for ps, *_ in panels)
    cell = min(cfg.max_cell, cfg.panel / (biggest + 1))
    width = cfg.margin + sum(cell * (ps.size + 1) + cfg.margin for ps, *_ in panels)
    height = 2 * cfg.margin + cell * (biggest + 1)
    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=f"{width:.0f}",
                      height=f"{height:.0f}", **{"font-family": "monospace", "font-size": "11"})
    left = cfg.margin
    for ps, b, colours, title in panels:
        left += _panel(root, ps, b, colours, left, cell, cfg, title) + cfg.margin
    return ET.tostring(root, encoding="unicode") + "\n"


def _boundary_colours(b: Optional[BoundaryStructure]):
    if b is None:
        return lambda p: BOTH_COLOUR
    top, bottom = set(b.top), set(b.bottom)

    def colour(p):
        if p in top and p in bottom:
            return BOTH_COLOUR
        if p in top:
            return TOP_COLOUR
        return BOTTOM_COLOUR if p in bottom else INTERIOR_COLOUR
    return colour
