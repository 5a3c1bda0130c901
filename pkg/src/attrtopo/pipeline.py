"""End-to-end session construction.

Per attribution method: estimate delta (unless given), grid-search the
resolution (unless given), build the Mapper graph, summarize it, and compute
its extended persistence diagram. Afterwards: the bottleneck distance matrix,
the PCA projection, and a provenance block recording seeds, grids, scores,
and wall-clock seconds per stage. Any failure is re-raised with the stage
name attached so the CLI can report where the pipeline died.
"""

from __future__ import annotations

import time
from typing import Optional, Sequence, Union

import numpy as np

from ._kernels import BACKEND
from .analytics import pca_project
from .mapper import build_mapper
from .model import AttributionSet, CoverParams, FeatureTable, Session
from .params import DEFAULT_GRID, StabilityReport, estimate_delta, select_resolution
from .summarize import summarize_graph, summarize_to_fixpoint
from .topology import distance_matrix, extended_persistence, node_filtration

SUMMARIZE_MODES = ("single", "fixpoint", "off")


class PipelineError(RuntimeError):
    """An upstream failure, tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")


def _run_stage(stage: str, fn, *args, **kwargs):
    start = time.perf_counter()
    try:
        result = fn(*args, **kwargs)
    except Exception as exc:
        raise PipelineError(stage, exc) from exc
    return result, time.perf_counter() - start


def _report_to_provenance(report: StabilityReport) -> dict:
    return {
        "grid": list(report.grid),
        "scores": list(report.scores),
        "chosen": report.chosen,
        "delta": report.delta,
        "seed": report.seed,
        "bootstrapCount": report.bootstrap_count,
        "subsampleCount": report.subsample_count,
    }


def build_session(
    table: FeatureTable,
    preds: np.ndarray,
    labels: np.ndarray,
    methods: Sequence[AttributionSet],
    projections: Optional[dict[str, np.ndarray]] = None,
    *,
    gain: float = 0.4,
    resolution: Optional[int] = None,
    delta: Optional[float] = None,
    grid: Sequence[int] = DEFAULT_GRID,
    bootstrap_count: int = 20,
    subsample_count: int = 100,
    seed: int = 0,
    summarize: str = "single",
) -> Session:
    """Compute every derived structure for one dataset + attribution bundle.

    ``resolution``/``delta`` of None mean automatic selection; ``summarize``
    is one of ``single`` (one merge pass), ``fixpoint`` (iterate until no
    merge), or ``off``.
    """
    if summarize not in SUMMARIZE_MODES:
        raise ValueError(f"summarize must be one of {SUMMARIZE_MODES}, got {summarize!r}")
    if len(methods) < 2:
        raise ValueError("at least two methods required")
    preds = np.asarray(preds, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    total_start = time.perf_counter()

    graphs = {}
    diagrams = {}
    per_method_provenance = {}
    for attrs in methods:
        name = attrs.method_name
        timings: dict[str, float] = {}

        if delta is None:
            method_delta, timings["deltaSeconds"] = _run_stage(
                f"estimate_delta[{name}]",
                estimate_delta, attrs, K=subsample_count, seed=seed,
            )
        else:
            method_delta = float(delta)

        report = None
        if resolution is None:
            report, timings["searchSeconds"] = _run_stage(
                f"select_resolution[{name}]",
                select_resolution,
                attrs, preds,
                grid=grid, gain=gain, delta=method_delta,
                B=bootstrap_count, seed=seed, subsample_count=subsample_count,
            )
            method_resolution = report.chosen
        else:
            method_resolution = int(resolution)

        params = CoverParams(
            resolution=method_resolution, gain=gain, delta=method_delta, seed=seed
        )
        graph, timings["mapperSeconds"] = _run_stage(
            f"build_mapper[{name}]", build_mapper, attrs, preds, params
        )
        if summarize == "single":
            graph, timings["summarizeSeconds"] = _run_stage(
                f"summarize[{name}]", summarize_graph, graph, preds
            )
        elif summarize == "fixpoint":
            graph, timings["summarizeSeconds"] = _run_stage(
                f"summarize[{name}]", summarize_to_fixpoint, graph, preds
            )
        diagram, timings["persistenceSeconds"] = _run_stage(
            f"persistence[{name}]",
            lambda g: extended_persistence(node_filtration(g, preds)),
            graph,
        )

        graphs[name] = graph
        diagrams[name] = diagram
        per_method_provenance[name] = {
            "delta": method_delta,
            "resolution": method_resolution,
            "deltaGiven": delta is not None,
            "resolutionGiven": resolution is not None,
            "stability": _report_to_provenance(report) if report is not None else None,
            "stageSeconds": timings,
        }

    distances, distances_seconds = _run_stage(
        "distance_matrix", distance_matrix, [diagrams[m.method_name] for m in methods]
    )
    pca, pca_seconds = _run_stage("pca_project", pca_project, table)
    all_projections = {"pca": pca}
    if projections:
        all_projections.update(projections)

    provenance = {
        "seed": int(seed),
        "gain": float(gain),
        "grid": [int(r) for r in grid],
        "bootstrapCount": int(bootstrap_count),
        "subsampleCount": int(subsample_count),
        "summarize": summarize,
        "generator": "PCG64",
        "kernelBackend": BACKEND,
        "perMethod": per_method_provenance,
        "stageSeconds": {
            "distanceMatrix": distances_seconds,
            "pca": pca_seconds,
            "total": time.perf_counter() - total_start,
        },
    }

    return Session(
        table=table,
        preds=preds,
        labels=labels,
        methods=tuple(methods),
        graphs=graphs,
        diagrams=diagrams,
        distances=distances,
        projections=all_projections,
        provenance=provenance,
    )
