"""Redundancy removal for Mapper graphs.

Nodes whose member sets are nearly identical (Jaccard similarity at or above
a threshold) say nothing new and only clutter the picture, so they are merged.
Merging follows a single-linkage hierarchy over Jaccard distance cut at
1 - threshold, which is the same thing as taking connected components of the
"similar enough" relation.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .model import MapperGraph, MapperNode


def _jaccard(a: set, b: set) -> float:
    inter = len(a & b)
    if inter == 0:
        return 0.0
    return inter / len(a | b)


def _merge_groups(graph: MapperGraph, sim_threshold: float) -> list[list[int]]:
    """Connected components of the Jaccard >= threshold relation on nodes."""
    n = len(graph.nodes)
    member_sets = [set(int(i) for i in node.members) for node in graph.nodes]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if _jaccard(member_sets[i], member_sets[j]) >= sim_threshold:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def summarize_graph(
    graph: MapperGraph, lens: np.ndarray, sim_threshold: float = 0.9
) -> MapperGraph:
    """Merge groups of mutually redundant nodes into single nodes.

    Each merged node's members are the union of its constituents, its lens
    value is the mean lens over that union, and its interval index is the
    smallest constituent interval. Edges are rebuilt from member
    intersections. Node ids are reassigned in order of smallest member index.
    """
    if not (0.0 < sim_threshold <= 1.0):
        raise ValueError(f"sim_threshold must be in (0, 1], got {sim_threshold}")
    lens = np.asarray(lens, dtype=np.float64)
    groups = _merge_groups(graph, sim_threshold)
    if all(len(g) == 1 for g in groups):
        return graph

    merged: list[tuple[np.ndarray, int]] = []
    for group in groups:
        members = np.unique(np.concatenate([graph.nodes[i].members for i in group]))
        interval = min(graph.nodes[i].interval_index for i in group)
        merged.append((members, interval))
    merged.sort(key=lambda item: (int(item[0][0]), item[1]))

    nodes = tuple(
        MapperNode(
            id=new_id,
            members=members,
            interval_index=interval,
            lens_value=float(lens[members].mean()),
        )
        for new_id, (members, interval) in enumerate(merged)
    )

    counts: Counter[tuple[int, int]] = Counter()
    owners: dict[int, list[int]] = {}
    for node in nodes:
        for obs in node.members:
            owners.setdefault(int(obs), []).append(node.id)
    for obs_nodes in owners.values():
        for i, a in enumerate(obs_nodes):
            for b in obs_nodes[i + 1 :]:
                counts[(a, b) if a < b else (b, a)] += 1
    edges = tuple((a, b, counts[(a, b)]) for a, b in sorted(counts))

    return MapperGraph(
        nodes=nodes, edges=edges, params=graph.params, method_name=graph.method_name
    )


def summarize_to_fixpoint(
    graph: MapperGraph, lens: np.ndarray, sim_threshold: float = 0.9
) -> MapperGraph:
    """Iterate summarize_graph until no further merge happens.

    Merging can create fresh similarity between previously dissimilar nodes,
    so a single pass is not always a fixpoint. Node count strictly decreases
    on every effective pass, so this terminates.
    """
    while True:
        after = summarize_graph(graph, lens, sim_threshold)
        if len(after.nodes) == len(graph.nodes):
            return after
        graph = after
