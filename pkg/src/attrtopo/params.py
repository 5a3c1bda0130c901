"""Bootstrap selection of Mapper parameters.

delta: mean one-sided Hausdorff distance from the attribution cloud to K
bootstrap resamples of itself. resolution: grid search minimizing the mean
bottleneck distance between the full-cloud diagram and diagrams built on B
bootstrap resamples (most stable wins). gain stays at 0.4 unless overridden.

All randomness comes from per-purpose child streams of one root seed, so the
delta draws never depend on B, the b-th stability resample never depends on
the grid point, and iterations can run in any order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ._kernels import hausdorff_to_subset
from .mapper import build_mapper
from .model import AttributionSet, CoverParams
from .topology import bottleneck, extended_persistence, node_filtration

# spawn-key purposes for derived random streams
_PURPOSE_DELTA = 0
_PURPOSE_STABILITY = 1

DEFAULT_GRID = range(5, 41)


class DegenerateCloud(UserWarning):
    """All attribution points identical; delta is forced to 0."""


@dataclass(frozen=True)
class StabilityReport:
    """Everything needed to reproduce one resolution search."""

    grid: tuple[int, ...]
    scores: tuple[float, ...]
    chosen: int
    delta: float
    seed: int
    bootstrap_count: int
    subsample_count: int


def _as_matrix(attrs: Union[AttributionSet, np.ndarray]) -> np.ndarray:
    if isinstance(attrs, AttributionSet):
        return attrs.attributions
    return np.asarray(attrs, dtype=np.float64)


def _stream(seed: int, purpose: int, iteration: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(purpose, iteration))
    )


def bootstrap_hausdorff(points: np.ndarray, resamples: Sequence[np.ndarray]) -> list[float]:
    """One-sided Hausdorff distance from ``points`` to each resampled subset.

    Resamples are index arrays into ``points``; as subsets of the cloud only
    the left-out points contribute, so d_H(X, X[idx]) = max over x of the
    distance to the nearest retained point.
    """
    return [hausdorff_to_subset(points, np.asarray(idx, dtype=np.intp)) for idx in resamples]


def estimate_delta(
    attrs: Union[AttributionSet, np.ndarray], K: int = 100, seed: int = 0
) -> float:
    """Mean bootstrap Hausdorff distance of the attribution cloud."""
    X = _as_matrix(attrs)
    n = X.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 attribution rows, got {n}")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if np.all(X == X[0]):
        warnings.warn(DegenerateCloud("all attribution points identical; delta = 0"))
        return 0.0
    resamples = [_stream(seed, _PURPOSE_DELTA, k).integers(0, n, size=n) for k in range(K)]
    return float(np.mean(bootstrap_hausdorff(X, resamples)))


def stability_score(
    attrs: Union[AttributionSet, np.ndarray],
    lens: np.ndarray,
    params: CoverParams,
    B: int = 20,
    seed: int = 0,
) -> float:
    """Mean bottleneck distance between the full-cloud diagram and B bootstrap diagrams.

    The b-th resample depends only on (seed, b), so scores at different
    resolutions compare the same resamples.
    """
    X = _as_matrix(attrs)
    lens = np.asarray(lens, dtype=np.float64)
    if B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    params.validate()
    n = X.shape[0]

    def diagram_of(points: np.ndarray, point_lens: np.ndarray):
        graph = build_mapper(points, point_lens, params)
        return extended_persistence(node_filtration(graph, point_lens))

    d0 = diagram_of(X, lens)
    total = 0.0
    for b in range(B):
        idx = _stream(seed, _PURPOSE_STABILITY, b).integers(0, n, size=n)
        total += bottleneck(d0, diagram_of(X[idx], lens[idx]))
    return total / B


def select_resolution(
    attrs: Union[AttributionSet, np.ndarray],
    lens: np.ndarray,
    grid: Sequence[int] = DEFAULT_GRID,
    gain: float = 0.4,
    delta: float = 0.0,
    B: int = 20,
    seed: int = 0,
    subsample_count: int = 100,
) -> StabilityReport:
    """Grid-search the resolution with the lowest bootstrap instability.

    Ties break toward the smaller resolution. ``subsample_count`` is recorded
    in the report as the K used when ``delta`` was estimated.
    """
    grid = tuple(int(r) for r in grid)
    if not grid:
        raise ValueError("resolution grid is empty")
    scores = tuple(
        stability_score(attrs, lens, CoverParams(resolution=r, gain=gain, delta=delta, seed=seed), B=B, seed=seed)
        for r in grid
    )
    best = min(zip(scores, grid))  # ties fall to the smaller resolution
    return StabilityReport(
        grid=grid,
        scores=scores,
        chosen=best[1],
        delta=float(delta),
        seed=int(seed),
        bootstrap_count=int(B),
        subsample_count=int(subsample_count),
    )
