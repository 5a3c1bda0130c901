"""Mapper graph construction from an attribution cloud and a scalar lens.

The lens range is tiled with ``resolution`` uniform closed intervals whose
consecutive overlap fraction is ``gain``; each bin is clustered by threshold
single linkage at distance ``delta``; clusters become nodes and nodes sharing
observations are connected. Everything is deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ._kernels import single_linkage_labels
from .model import AttributionSet, CoverParams, MapperGraph, MapperNode


class EmptyLens(ValueError):
    """Lens vector has no entries."""


class ShapeMismatch(ValueError):
    """Attribution rows and lens entries disagree."""


@dataclass(frozen=True)
class IntervalCover:
    """Ordered overlapping closed intervals tiling [min lens, max lens]."""

    intervals: tuple[tuple[float, float], ...]

    def __len__(self) -> int:
        return len(self.intervals)


def build_cover(lens: np.ndarray, resolution: int, gain: float) -> IntervalCover:
    """Uniform overlapping cover of the lens range.

    With R = max - min and L = R / (resolution - (resolution - 1) * gain),
    interval i is [min + i*L*(1-gain), min + i*L*(1-gain) + L]; consecutive
    intervals overlap by L*gain and the last one ends exactly at max.
    """
    lens = np.asarray(lens, dtype=np.float64)
    if lens.size == 0:
        raise EmptyLens("lens vector is empty")
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    if not (0.0 < gain < 1.0):
        raise ValueError(f"gain must be in (0, 1), got {gain}")
    lo = float(lens.min())
    hi = float(lens.max())
    span = hi - lo
    if span == 0.0 or resolution == 1:
        return IntervalCover(intervals=((lo, hi),))
    length = span / (resolution - (resolution - 1) * gain)
    step = length * (1.0 - gain)
    intervals = []
    for i in range(resolution):
        start = lo + i * step
        end = start + length
        intervals.append((start, end))
    # pin the boundary intervals to the exact data range
    intervals[0] = (lo, intervals[0][1])
    intervals[-1] = (intervals[-1][0], hi)
    return IntervalCover(intervals=tuple(intervals))


def assign_bins(lens: np.ndarray, cover: IntervalCover) -> list[np.ndarray]:
    """Observation indices per interval; boundaries belong to both intervals."""
    lens = np.asarray(lens, dtype=np.float64)
    return [np.nonzero((lens >= start) & (lens <= end))[0] for start, end in cover.intervals]


def cluster_bin(points: np.ndarray, delta: float) -> list[np.ndarray]:
    """Single-linkage clusters of one bin, cut at distance ``delta``.

    Two points share a cluster iff a chain of pairwise Euclidean distances
    each <= delta connects them. Returns within-bin index arrays ordered by
    smallest member.
    """
    if delta < 0.0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    points = np.asarray(points, dtype=np.float64)
    if len(points) == 0:
        return []
    labels = single_linkage_labels(points, float(delta))
    return [np.nonzero(labels == lab)[0] for lab in range(labels.max() + 1)]


def build_mapper(
    attrs: AttributionSet | np.ndarray,
    lens: np.ndarray,
    params: CoverParams,
    method_name: str | None = None,
) -> MapperGraph:
    """Full Mapper construction: cover, per-bin clustering, nerve edges.

    Node ids follow (interval index, smallest member) order; an edge appears
    for every node pair with intersecting members and carries the
    intersection size.
    """
    if isinstance(attrs, AttributionSet):
        matrix = attrs.attributions
        if method_name is None:
            method_name = attrs.method_name
    else:
        matrix = np.asarray(attrs, dtype=np.float64)
    lens = np.asarray(lens, dtype=np.float64)
    if lens.size == 0:
        raise EmptyLens("lens vector is empty")
    if matrix.shape[0] != lens.shape[0]:
        raise ShapeMismatch(f"{matrix.shape[0]} attribution rows vs {lens.shape[0]} lens entries")
    params.validate()

    cover = build_cover(lens, params.resolution, params.gain)
    bins = assign_bins(lens, cover)

    nodes: list[MapperNode] = []
    for interval_index, bin_idx in enumerate(bins):
        if bin_idx.size == 0:
            continue
        for cluster in cluster_bin(matrix[bin_idx], params.delta):
            members = bin_idx[cluster]
            nodes.append(
                MapperNode(
                    id=len(nodes),
                    members=members,
                    interval_index=interval_index,
                    lens_value=float(lens[members].mean()),
                )
            )

    shared: Counter = Counter()
    containing: dict[int, list[int]] = {}
    for node in nodes:
        for obs in node.members:
            containing.setdefault(int(obs), []).append(node.id)
    for node_ids in containing.values():
        for i in range(len(node_ids)):
            for j in range(i + 1, len(node_ids)):
                shared[(node_ids[i], node_ids[j])] += 1
    edges = tuple((a, b, count) for (a, b), count in sorted(shared.items()))

    return MapperGraph(nodes=tuple(nodes), edges=edges, params=params, method_name=method_name or "")
