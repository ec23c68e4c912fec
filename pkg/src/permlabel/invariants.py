"""Structural checks on boundaries, layers, lambda and augmentation.

Each check takes one connected component and returns how many cases violate
the property.  All of them compare against BFS distances, so a zero count is
evidence the structures the labels rely on are what the decoder assumes.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .augment import AugmentedSet, augment, check_containment
from .boundaries import BoundaryStructure, build_boundaries, extreme_neighbors
from .graph import PointSet, adjacency_matrix, component_blocks, distance_matrix, from_permutation


@dataclass
class Instance:
    """One component with everything the checks look at."""

    source: PointSet
    dist: np.ndarray  # BFS distances in ``source``
    aug: AugmentedSet
    b: BoundaryStructure  # of the augmented set
    aug_dist: np.ndarray
    raw_b: BoundaryStructure  # of ``source`` itself

    @classmethod
    def of(cls, ps: PointSet) -> Instance:
        aug = augment(ps)
        return cls(ps, distance_matrix(ps), aug, build_boundaries(aug.points),
                   distance_matrix(aug.points), build_boundaries(ps))


def _boundary_arrays(b: BoundaryStructure):
    pts = list(b.layer)
    idx = np.array([p.x - 1 for p in pts])
    layer = np.array([b.layer[p] for p in pts])
    lam = np.array([b.lam[p] for p in pts])
    return pts, idx, layer, lam


def layer_parity(inst: Instance) -> int:
    """Even layers lie on the top boundary, odd layers on the bottom."""
    bad = 0
    for b in (inst.b, inst.raw_b):
        top, bottom = set(b.top), set(b.bottom)
        bad += sum((p not in top) if layer % 2 == 0 else (p not in bottom)
                   for p, layer in b.layer.items())
    return bad


def last_adjacent_to_next_layer(inst: Instance) -> int:
    bad = 0
    for b, dist in ((inst.b, inst.aug_dist), (inst.raw_b, inst.dist)):
        for i, last in b.layer_last.items():
            if i + 1 < len(b.layers):
                bad += sum(int(dist[last.x - 1, q.x - 1] != 1) for q in b.layers[i + 1])
    return bad


def quick_path_equivalence(inst: Instance) -> int:
    """For boundary u, v with L(u) < L(v): d(u, v) = L(v) - L(u) iff lambda(u) > lambda(v)."""
    bad = 0
    for b, dist in ((inst.b, inst.aug_dist), (inst.raw_b, inst.dist)):
        _, idx, layer, lam = _boundary_arrays(b)
        d = dist[np.ix_(idx, idx)]
        gap = layer[None, :] - layer[:, None]
        quick = d == gap
        higher = lam[:, None] > lam[None, :]
        bad += int(((quick != higher) & (gap > 0)).sum())
    return bad


def layer_gap_distance(inst: Instance) -> int:
    """Boundary distances are the layer gap or the gap plus two."""
    bad = 0
    for b, dist in ((inst.b, inst.aug_dist), (inst.raw_b, inst.dist)):
        _, idx, layer, _ = _boundary_arrays(b)
        d = dist[np.ix_(idx, idx)]
        gap = np.abs(layer[None, :] - layer[:, None])
        ok = (d == gap) | (d == gap + 2)
        np.fill_diagonal(ok, True)
        bad += int((~ok | ((d == 0) & ~np.eye(len(idx), dtype=bool))).sum())
    return bad


def _ranges(inst: Instance):
    """Boundary index ranges and extremes of each original vertex, augmented coordinates."""
    b = inst.b
    bpos = {p: i for i, p in enumerate(b.bottom)}
    tpos = {p: i for i, p in enumerate(b.top)}
    out = []
    for v in inst.aug.originals:
        e = extreme_neighbors(inst.aug.points, b, v)
        out.append((v, e, (bpos[e.bfirst], bpos[e.blast]), (tpos[e.tfirst], tpos[e.tlast])))
    return out


def distance_two_by_ranges(inst: Instance) -> int:
    """d(u, v) <= 2 iff the bottom ranges or the top ranges of u and v meet."""
    rows = _ranges(inst)
    bad = 0
    for i, (u, _, ub, ut) in enumerate(rows):
        for j, (v, _, vb, vt) in enumerate(rows):
            if i == j:
                continue
            meet = (ub[0] <= vb[1] and vb[0] <= ub[1]) or (ut[0] <= vt[1] and vt[0] <= ut[1])
            bad += bool(meet) != bool(inst.dist[i, j] <= 2)
    return bad


def anchor_decomposition(inst: Instance) -> int:
    """Pairs at distance > 2 route through Blast/Tlast of the left one and Bfirst/Tfirst of the right."""
    rows = _ranges(inst)
    D = inst.aug_dist
    bad = 0
    for i, (u, eu, _, _) in enumerate(rows):
        for j, (v, ev, _, _) in enumerate(rows):
            d = inst.dist[i, j]
            if not (u.x < v.x and d > 2):
                continue
            best = min(D[s.x - 1, t.x - 1] for s in (eu.blast, eu.tlast) for t in (ev.bfirst, ev.tfirst))
            bad += int(d != best + 2)
    return bad


def containment_is_adjacency(inst: Instance) -> int:
    rows = _ranges(inst)
    bad = 0
    for i, (u, eu, _, _) in enumerate(rows):
        for j, (v, ev, _, _) in enumerate(rows):
            if i != j:
                contained = check_containment(eu, ev) or check_containment(ev, eu)
                bad += contained != bool(inst.dist[i, j] == 1)
    return bad


def augmentation_preserves_distances(inst: Instance) -> int:
    idx = np.array([p.x - 1 for p in inst.aug.originals])
    bad = int((inst.aug_dist[np.ix_(idx, idx)] != inst.dist).sum())
    bad += sum(p in inst.b.layer for p in inst.aug.originals)  # originals must be interior
    return bad


def boundary_only_paths(inst: Instance) -> int:
    """Shortest paths exist whose interior points all lie on the boundaries."""
    ps = inst.source
    n = ps.size
    adj = adjacency_matrix(ps).astype(np.float32)
    on_boundary = np.zeros(n, dtype=bool)
    on_boundary[[p.x - 1 for p in inst.raw_b.layer]] = True
    dist = np.full((n, n), -1, dtype=np.int32)
    reached = np.eye(n, dtype=bool)
    np.fill_diagonal(dist, 0)
    frontier = reached.astype(np.float32)
    k = 0
    while frontier.any():
        k += 1
        new = ((frontier @ adj) > 0) & ~reached
        dist[new] = k
        reached |= new
        frontier = (new & on_boundary[None, :]).astype(np.float32)  # only boundary points relay
    return int((dist != inst.dist).sum())


CHECKS: dict[str, Callable[[Instance], int]] = {
    "layer parity": layer_parity,
    "last(i) adjacent to layer i+1": last_adjacent_to_next_layer,
    "quick-path equivalence": quick_path_equivalence,
    "distance in {gap, gap+2}": layer_gap_distance,
    "distance <= 2 iff ranges meet": distance_two_by_ranges,
    "anchor decomposition for d > 2": anchor_decomposition,
    "containment iff adjacency": containment_is_adjacency,
    "augmentation keeps distances": augmentation_preserves_distances,
    "boundary-only shortest paths": boundary_only_paths,
}


def instances(pi: Sequence[int]) -> Iterable[Instance]:
    for block in component_blocks(from_permutation(pi)):
        if block.size > 1:
            yield Instance.of(block.points)


def check_permutation(pi: Sequence[int], names: Iterable[str] = CHECKS) -> Counter:
    names = list(names)
    total: Counter = Counter({name: 0 for name in names})
    for inst in instances(pi):
        for name in names:
            total[name] += int(CHECKS[name](inst))
    return total
