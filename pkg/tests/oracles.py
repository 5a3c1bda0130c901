"""Independent brute-force reimplementations used to check the real code.

Everything here favors obviousness over speed: explicit loops, no shared
helpers with the package beyond the documented interval formula, BFS instead
of union-find, factorial matching instead of binary search.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def naive_mapper(X, lens, resolution, gain, delta):
    """Quadratic Mapper: returns (nodes, edges).

    nodes: list of (interval_index, frozenset of member indices) in
    (interval, smallest member) order. edges: dict (i, j) -> shared count
    over node list positions.
    """
    X = np.asarray(X, dtype=float)
    lens = np.asarray(lens, dtype=float)
    lo, hi = float(lens.min()), float(lens.max())
    if hi == lo or resolution == 1:
        intervals = [(lo, hi)]
    else:
        length = (hi - lo) / (resolution - (resolution - 1) * gain)
        step = length * (1 - gain)
        intervals = [(lo + i * step, lo + i * step + length) for i in range(resolution)]
        intervals[0] = (lo, intervals[0][1])
        intervals[-1] = (intervals[-1][0], hi)

    nodes = []
    for idx, (start, end) in enumerate(intervals):
        bin_members = [j for j in range(len(lens)) if start <= lens[j] <= end]
        # BFS over the "within delta" relation
        remaining = list(bin_members)
        clusters = []
        while remaining:
            seed = remaining.pop(0)
            cluster = {seed}
            frontier = [seed]
            while frontier:
                cur = frontier.pop()
                for other in list(remaining):
                    if math.dist(X[cur], X[other]) <= delta:
                        remaining.remove(other)
                        cluster.add(other)
                        frontier.append(other)
            clusters.append(cluster)
        clusters.sort(key=min)
        for cluster in clusters:
            nodes.append((idx, frozenset(cluster)))

    edges = {}
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            shared = len(nodes[i][1] & nodes[j][1])
            if shared:
                edges[(i, j)] = shared
    return nodes, edges


def _linf(p, q):
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag(p):
    return abs(p[1] - p[0]) / 2.0


def exhaustive_bottleneck_dim(a, b):
    """Min over all partial injective matchings of the max pair cost."""
    a = [tuple(p) for p in a]
    b = [tuple(p) for p in b]
    best = math.inf
    for k in range(min(len(a), len(b)) + 1):
        for a_sub in itertools.combinations(range(len(a)), k):
            for b_perm in itertools.permutations(range(len(b)), k):
                cost = 0.0
                for ia, ib in zip(a_sub, b_perm):
                    cost = max(cost, _linf(a[ia], b[ib]))
                for ia in range(len(a)):
                    if ia not in a_sub:
                        cost = max(cost, _diag(a[ia]))
                for ib in range(len(b)):
                    if ib not in b_perm:
                        cost = max(cost, _diag(b[ib]))
                best = min(best, cost)
    return 0.0 if best is math.inf else best


def exhaustive_bottleneck(d1, d2):
    """Max over dims of the exhaustive per-dimension distance.

    Takes PersistenceDiagram objects; normalizes coordinates to (min, max)
    like the real implementation documents.
    """
    total = 0.0
    for dim in (0, 1):
        a = [(min(p.birth, p.death), max(p.birth, p.death)) for p in d1.points if p.dim == dim]
        b = [(min(p.birth, p.death), max(p.birth, p.death)) for p in d2.points if p.dim == dim]
        total = max(total, exhaustive_bottleneck_dim(a, b))
    return total


def random_filtered_graph(rng, max_components=3, max_nodes=7, max_extra_edges=4):
    """Random graph whose components all have >= 2 nodes and distinct heights.

    Returns (heights list, edge list, n_components, n_independent_cycles).
    Components need >= 2 nodes because a lone node's extended pair has zero
    persistence and is discarded by contract.
    """
    heights = []
    edges = []
    n_components = int(rng.integers(1, max_components + 1))
    for _ in range(n_components):
        size = int(rng.integers(2, max_nodes + 1))
        offset = len(heights)
        heights.extend(rng.uniform(0, 10, size=size).tolist())
        # random spanning tree
        for v in range(1, size):
            u = int(rng.integers(0, v))
            edges.append((offset + u, offset + v))
        possible = [
            (offset + u, offset + v)
            for u in range(size)
            for v in range(u + 1, size)
            if (offset + u, offset + v) not in edges
        ]
        extra = int(rng.integers(0, max_extra_edges + 1))
        if possible and extra:
            chosen = rng.choice(len(possible), size=min(extra, len(possible)), replace=False)
            edges.extend(possible[i] for i in chosen)
    cycles = len(edges) - len(heights) + n_components
    return heights, edges, n_components, cycles
