"""Extended persistence of graph-valued height functions and the bottleneck
distance between the resulting diagrams.

Persistence is computed by the cone construction: the graph's simplices enter
in ascending height order, then every simplex coned to an extra apex vertex
enters in descending order, and the boundary matrix over GF(2) is reduced
left to right. Ordinary, extended, and relative pairs fall out of which side
of the cone boundary the paired columns live on. Columns are kept as Python
integers used as bitsets, which keeps the reduction short and fast for
graph-sized complexes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .model import (
    SUBTYPE_EXT,
    SUBTYPE_ORD,
    SUBTYPE_REL,
    MapperGraph,
    PersistenceDiagram,
    PersistencePoint,
)


@dataclass(frozen=True)
class FilteredGraph:
    heights: np.ndarray  # filtration value per node
    edges: tuple[tuple[int, int], ...]


def node_filtration(graph: MapperGraph, lens: np.ndarray) -> FilteredGraph:
    """Height per node = mean lens value over its members."""
    lens = np.asarray(lens, dtype=np.float64)
    heights = np.array([float(lens[node.members].mean()) for node in graph.nodes])
    return FilteredGraph(heights=heights, edges=tuple((a, b) for a, b, _ in graph.edges))


def extended_persistence(fg: FilteredGraph) -> PersistenceDiagram:
    """Extended persistence diagram of a piecewise-linear graph function.

    Produces Ord0 points (local minima merging, birth < death), one Ext0
    point per connected component (min height, max height), one Ext1 point
    per independent cycle stored with birth = upper height >= death = lower
    height, and Rel1 points for downward merges. Zero-persistence points are
    dropped.

    The apex vertex is placed before the ascending block: reducing with the
    apex in the middle mispairs extended classes as soon as the graph has
    more than one component.
    """
    h = np.asarray(fg.heights, dtype=np.float64)
    nv = len(h)
    edges = list(fg.edges)

    # column order: apex, ascending simplices, descending coned simplices
    asc: list[tuple] = [((h[v], 0, v), ("v", v)) for v in range(nv)]
    asc += [
        ((max(h[u], h[v]), 1, ei), ("e", ei))
        for ei, (u, v) in enumerate(edges)
    ]
    asc.sort(key=lambda item: item[0])
    desc: list[tuple] = [((-h[v], 1, v), ("cv", v)) for v in range(nv)]
    desc += [
        ((-min(h[u], h[v]), 2, ei), ("ce", ei))
        for ei, (u, v) in enumerate(edges)
    ]
    desc.sort(key=lambda item: item[0])

    simplices = [("apex", -1)] + [s for _, s in asc] + [s for _, s in desc]
    row_of = {s: i for i, s in enumerate(simplices)}
    n_asc = 1 + len(asc)  # columns < n_asc are the apex + ascending block

    def height_value(simplex) -> float:
        kind, idx = simplex
        if kind == "v":
            return float(h[idx])
        if kind == "e":
            u, v = edges[idx]
            return float(max(h[u], h[v]))
        if kind == "cv":
            return float(h[idx])
        if kind == "ce":
            u, v = edges[idx]
            return float(min(h[u], h[v]))
        raise ValueError(kind)

    def boundary(simplex) -> int:
        kind, idx = simplex
        if kind == "apex" or kind == "v":
            return 0
        if kind == "e":
            u, v = edges[idx]
            return (1 << row_of[("v", u)]) | (1 << row_of[("v", v)])
        if kind == "cv":
            return (1 << 0) | (1 << row_of[("v", idx)])
        u, v = edges[idx]  # cone triangle over edge idx
        return (
            (1 << row_of[("e", idx)])
            | (1 << row_of[("cv", u)])
            | (1 << row_of[("cv", v)])
        )

    low_to_col: dict[int, int] = {}
    reduced: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    for j, simplex in enumerate(simplices):
        col = boundary(simplex)
        while col:
            low = col.bit_length() - 1
            other = low_to_col.get(low)
            if other is None:
                break
            col ^= reduced[other]
        if col:
            low = col.bit_length() - 1
            low_to_col[low] = j
            reduced[j] = col
            pairs.append((low, j))

    points: list[PersistencePoint] = []
    for i, j in pairs:
        si, sj = simplices[i], simplices[j]
        birth = height_value(si)
        death = height_value(sj)
        if birth == death:
            continue
        if j < n_asc:
            points.append(PersistencePoint(birth, death, dim=0, subtype=SUBTYPE_ORD))
        elif i < n_asc:
            dim = 0 if si[0] == "v" else 1
            points.append(PersistencePoint(birth, death, dim=dim, subtype=SUBTYPE_EXT))
        else:
            points.append(PersistencePoint(birth, death, dim=1, subtype=SUBTYPE_REL))
    return PersistenceDiagram(points=tuple(points))


def _normalized(diagram: PersistenceDiagram, dim: int) -> list[tuple[float, float]]:
    return [
        (min(p.birth, p.death), max(p.birth, p.death))
        for p in diagram.points
        if p.dim == dim
    ]


def _diag_cost(p: tuple[float, float]) -> float:
    return (p[1] - p[0]) / 2.0


def _feasible(
    a: list[tuple[float, float]],
    b: list[tuple[float, float]],
    cost: np.ndarray,
    r: float,
) -> bool:
    """Perfect matching test in the diagonal-augmented bipartite graph.

    Left side: points of ``a`` then diagonal copies for ``b``; right side:
    points of ``b`` then diagonal copies for ``a``. Diagonal copies match
    each other freely.
    """
    m, n = len(a), len(b)
    size = m + n
    adj: list[list[int]] = []
    for i in range(m):
        nbrs = list(np.nonzero(cost[i] <= r)[0])
        if _diag_cost(a[i]) <= r:
            nbrs.append(n + i)
        adj.append(nbrs)
    diag_right = list(range(n, n + m))
    for j in range(n):
        nbrs = list(diag_right)
        if _diag_cost(b[j]) <= r:
            nbrs.append(j)
        adj.append(nbrs)

    match_left = [-1] * size
    match_right = [-1] * size

    def augment(u: int, visited: list[bool]) -> bool:
        for v in adj[u]:
            if not visited[v]:
                visited[v] = True
                if match_right[v] < 0 or augment(match_right[v], visited):
                    match_left[u] = v
                    match_right[v] = u
                    return True
        return False

    matched = 0
    for u in range(size):
        visited = [False] * size
        if augment(u, visited):
            matched += 1
        else:
            return False
    return matched == size


def _bottleneck_dim(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> float:
    if not a and not b:
        return 0.0
    cost = np.zeros((len(a), len(b)))
    for i, pa in enumerate(a):
        for j, pb in enumerate(b):
            cost[i, j] = max(abs(pa[0] - pb[0]), abs(pa[1] - pb[1]))
    candidates = {0.0}
    candidates.update(_diag_cost(p) for p in a)
    candidates.update(_diag_cost(p) for p in b)
    candidates.update(float(c) for c in cost.ravel())
    cands = sorted(candidates)

    lo, hi = 0, len(cands) - 1
    if _feasible(a, b, cost, cands[0]):
        return cands[0]
    # invariant: cands[lo] infeasible, cands[hi] feasible
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _feasible(a, b, cost, cands[mid]):
            hi = mid
        else:
            lo = mid
    return cands[hi]


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Bottleneck distance, max over dimensions 0 and 1.

    Subtypes are pooled within a dimension; points use (min, max) coordinates
    so extended cycle points sit above the diagonal; matching a point to the
    diagonal costs half its persistence.
    """
    return max(
        _bottleneck_dim(_normalized(d1, 0), _normalized(d2, 0)),
        _bottleneck_dim(_normalized(d1, 1), _normalized(d2, 1)),
    )


def distance_matrix(diagrams: list[PersistenceDiagram]) -> np.ndarray:
    """Symmetric zero-diagonal matrix of pairwise bottleneck distances."""
    k = len(diagrams)
    out = np.zeros((k, k))
    for i, j in itertools.combinations(range(k), 2):
        out[i, j] = out[j, i] = bottleneck(diagrams[i], diagrams[j])
    return out
