"""Derived quantities behind the linked views.

Node colorings (aggregates and selection densities), signed feature-importance
levels on a [-5, 5] scale, kernel density estimates on a grid shared between
the global data and a selection, an L1 divergence for ranking features, a PCA
projection with a deterministic sign convention, and per-column averages.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .model import AGGREGATIONS, AttributionSet, FeatureTable, MapperGraph, Selection

KDE_GRID_SIZE = 128


def node_aggregate(
    graph: MapperGraph, values: np.ndarray, agg: str = "mean"
) -> np.ndarray:
    """Aggregate a per-observation attribute over each node's members.

    ``std`` is the population standard deviation (n denominator), so a
    single-member node gets 0.
    """
    if agg not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation {agg!r}; expected one of {AGGREGATIONS}")
    values = np.asarray(values, dtype=np.float64)
    fn = {
        "mean": np.mean,
        "median": np.median,
        "max": np.max,
        "min": np.min,
        "std": lambda a: np.std(a, ddof=0),
    }[agg]
    return np.array([float(fn(values[node.members])) for node in graph.nodes])


def selection_density(graph: MapperGraph, selection: Selection) -> np.ndarray:
    """Fraction of each node's members that the selection contains."""
    mask = np.zeros(0, dtype=bool)
    if len(graph.nodes):
        size = max(int(node.members.max()) for node in graph.nodes) + 1
        mask = np.zeros(size, dtype=bool)
        idx = selection.indices
        idx = idx[(idx >= 0) & (idx < size)]
        mask[idx] = True
    return np.array(
        [float(mask[node.members].sum()) / len(node.members) for node in graph.nodes]
    )


@dataclass(frozen=True)
class ImportanceLevels:
    """Signed [-5, 5] feature-importance levels, one row per method.

    ``levels`` aggregates the selection by mean; ``scaled`` holds the
    per-observation level matrices (5 * attribution / method max), whose
    extreme entry is exactly +/-5 for any method with a nonzero attribution.
    ``order`` lists feature indices by combined absolute level, descending.
    """

    method_names: tuple[str, ...]
    levels: np.ndarray  # (k, d) mean level per feature over the selection
    scaled: tuple[np.ndarray, ...]  # per method: (n, d) per-observation levels
    order: tuple[int, ...]


def importance_levels(
    methods: Sequence[AttributionSet], selection: Optional[Selection] = None
) -> ImportanceLevels:
    """Rescale each method's attributions so its global max maps to 5.

    The scale m is each method's max absolute attribution over the whole
    dataset, never over the selection, so levels stay comparable while a
    brush moves. Division happens before the 5x so m/m is exactly 1.
    """
    if not methods:
        raise ValueError("need at least one attribution set")
    n, d = methods[0].attributions.shape
    rows = np.arange(n) if selection is None else selection.indices
    levels = np.zeros((len(methods), d))
    scaled: list[np.ndarray] = []
    for i, m in enumerate(methods):
        peak = float(np.abs(m.attributions).max())
        if peak == 0.0:
            scaled.append(np.zeros((n, d)))
            continue
        per_obs = 5.0 * (m.attributions / peak)
        scaled.append(per_obs)
        if len(rows):
            levels[i] = per_obs[rows].mean(axis=0)
    combined = np.abs(levels).sum(axis=0)
    order = sorted(range(d), key=lambda f: (-combined[f], f))
    return ImportanceLevels(
        method_names=tuple(m.method_name for m in methods),
        levels=levels,
        scaled=tuple(scaled),
        order=tuple(order),
    )


def silverman_bandwidth(values: np.ndarray) -> float:
    """Silverman's rule with a small positive fallback for degenerate data."""
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    spread = min(float(values.std()), float(np.subtract(*np.percentile(values, [75, 25]))) / 1.34)
    h = 0.9 * spread * n ** (-1.0 / 5.0)
    if h <= 0.0:
        h = 1e-3 * max(1.0, abs(float(values.mean())))
    return h


@dataclass(frozen=True)
class KdeCurve:
    grid: np.ndarray  # ascending, length KDE_GRID_SIZE
    density: np.ndarray  # same length, non-negative
    bandwidth: float

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.grid))


def kde(values: np.ndarray, selection: Optional[Selection] = None) -> KdeCurve:
    """Gaussian KDE on a grid fixed by the global values.

    The grid spans the global min/max padded by three global bandwidths, so a
    selection curve overlays the global one point for point. The bandwidth is
    recomputed on the selected values.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("kde needs at least one value")
    h_global = silverman_bandwidth(values)
    lo = float(values.min()) - 3.0 * h_global
    hi = float(values.max()) + 3.0 * h_global
    grid = np.linspace(lo, hi, KDE_GRID_SIZE)

    subset = values if selection is None else values[selection.indices]
    if subset.size == 0:
        raise ValueError("kde selection is empty")
    h = silverman_bandwidth(subset)
    z = (grid[:, None] - subset[None, :]) / h
    density = np.exp(-0.5 * z * z).sum(axis=1) / (subset.size * h * np.sqrt(2.0 * np.pi))
    return KdeCurve(grid=grid, density=density, bandwidth=h)


def distribution_divergence(global_curve: KdeCurve, selection_curve: KdeCurve) -> float:
    """Trapezoidal L1 distance between two densities on the same grid."""
    if global_curve.grid.shape != selection_curve.grid.shape or not np.array_equal(
        global_curve.grid, selection_curve.grid
    ):
        raise ValueError("curves must share a grid")
    return float(
        np.trapezoid(np.abs(global_curve.density - selection_curve.density), global_curve.grid)
    )


def pca_project(table: Union[FeatureTable, np.ndarray]) -> np.ndarray:
    """Top-2 principal-component projection with a fixed sign convention.

    Each direction is flipped, if needed, so that its largest-magnitude
    loading is positive; output is then deterministic across SVD backends.
    """
    values = table.values if isinstance(table, FeatureTable) else np.asarray(table, dtype=np.float64)
    n, d = values.shape
    if n < 2 or d < 2:
        raise ValueError(f"need n >= 2 and d >= 2, got {values.shape}")
    centered = values - values.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:2]
    for row in range(components.shape[0]):
        pivot = int(np.abs(components[row]).argmax())
        if components[row, pivot] < 0:
            components[row] = -components[row]
    return centered @ components.T


@dataclass(frozen=True)
class TableAverages:
    """Global vs selection column means; NaN marks an empty selection."""

    global_mean: np.ndarray  # (d,)
    selection_mean: np.ndarray  # (d,), NaN when the selection is empty
    difference: np.ndarray  # (d,), zeros when the selection is empty


def table_averages(table: FeatureTable, selection: Selection) -> TableAverages:
    global_mean = table.values.mean(axis=0)
    if len(selection) == 0:
        d = table.values.shape[1]
        return TableAverages(
            global_mean=global_mean,
            selection_mean=np.full(d, np.nan),
            difference=np.zeros(d),
        )
    selection_mean = table.values[selection.indices].mean(axis=0)
    return TableAverages(
        global_mean=global_mean,
        selection_mean=selection_mean,
        difference=selection_mean - global_mean,
    )
