"""Read-only HTTP API over a built session.

The service holds one immutable Session; every request recomputes its answer
from that session, so identical requests produce byte-identical responses
(JSON with sorted keys) and concurrent requests never interact. Selection
state lives with the client and arrives in each POST body.

Errors use a single shape: {"code": ..., "message": ..., "stage": "service"}.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request, Response

from .analytics import (
    KdeCurve,
    distribution_divergence,
    importance_levels,
    kde,
    node_aggregate,
    selection_density,
    table_averages,
)
from .model import (
    AGGREGATIONS,
    NodeBrush,
    ProjectionBrush,
    QueryProvenance,
    Selection,
    Session,
)
from .query import FilterSyntaxError, UnknownColumnError, run_query


def _json(payload, status: int = 200) -> Response:
    return Response(
        content=json.dumps(payload, sort_keys=True, allow_nan=False),
        status_code=status,
        media_type="application/json",
    )


def _error(status: int, code: str, message: str) -> Response:
    return _json({"code": code, "message": message, "stage": "service"}, status=status)


def _provenance_payload(provenance) -> dict:
    if isinstance(provenance, NodeBrush):
        return {"type": "nodes", "graph": provenance.graph, "nodeIds": list(provenance.node_ids)}
    if isinstance(provenance, ProjectionBrush):
        return {"type": "points", "rect": list(provenance.rect)}
    if isinstance(provenance, QueryProvenance):
        return {"type": "query", "where": provenance.text}
    return {"type": "points"}


def create_app(session: Session) -> FastAPI:
    app = FastAPI(title="attrtopo", docs_url=None, redoc_url=None)
    global_curves: dict[str, KdeCurve] = {}  # lazy per-column cache; session is immutable

    def global_curve(column: str) -> KdeCurve:
        if column not in global_curves:
            global_curves[column] = kde(session.column_values(column))
        return global_curves[column]

    @app.get("/api/session/meta")
    def meta() -> Response:
        return _json(
            {
                "methodNames": session.method_names,
                "n": session.table.n,
                "d": session.table.d,
                "columns": list(session.table.column_names),
                "params": {
                    name: {
                        "resolution": g.params.resolution,
                        "gain": g.params.gain,
                        "delta": g.params.delta,
                        "seed": g.params.seed,
                    }
                    for name, g in session.graphs.items()
                },
                "provenance": session.provenance,
            }
        )

    @app.get("/api/mapper/{method}")
    def mapper(method: str, color: str = "pred", agg: str = "mean") -> Response:
        if method not in session.graphs:
            return _error(404, "unknown-method", f"no mapper graph for method {method!r}")
        if agg not in AGGREGATIONS:
            return _error(400, "unknown-aggregation", f"agg must be one of {AGGREGATIONS}")
        graph = session.graphs[method]
        try:
            values = session.column_values(color)
        except KeyError:
            return _error(400, "unknown-column", f"no column {color!r}")
        colors = node_aggregate(graph, values, agg)
        return _json(
            {
                "method": method,
                "nodes": [
                    {
                        "id": node.id,
                        "size": int(len(node.members)),
                        "members": [int(i) for i in node.members],
                        "intervalIndex": node.interval_index,
                        "lensValue": node.lens_value,
                    }
                    for node in graph.nodes
                ],
                "edges": [[a, b, shared] for a, b, shared in graph.edges],
                "color": {"attribute": color, "agg": agg, "values": list(colors)},
            }
        )

    @app.get("/api/distance-matrix")
    def distances() -> Response:
        return _json(
            {"methods": session.method_names, "matrix": session.distances.tolist()}
        )

    @app.get("/api/projection")
    def projection(kind: str = "pca") -> Response:
        if kind not in session.projections:
            return _error(
                404, "unknown-projection",
                f"no projection {kind!r}; available: {sorted(session.projections)}",
            )
        return _json({"kind": kind, "points": session.projections[kind].tolist()})

    @app.get("/api/attributions")
    def attributions(methods: str = "") -> Response:
        names = [m for m in methods.split(",") if m] or session.method_names
        try:
            sets = [session.method(name) for name in names]
        except KeyError as exc:
            return _error(404, "unknown-method", f"no attribution method {exc.args[0]!r}")
        return _json({"methods": names, "importance": _importance_payload(sets, None)})

    def _importance_payload(sets, selection: Optional[Selection]) -> dict:
        levels = importance_levels(sets, selection)
        return {
            "features": list(session.table.column_names),
            "levels": {
                name: list(levels.levels[i]) for i, name in enumerate(levels.method_names)
            },
            "order": list(levels.order),
        }

    def _selection_from_body(body: dict) -> Selection | Response:
        kind = body.get("type")
        n = session.table.n
        if kind == "nodes":
            method = body.get("graph")
            if method not in session.graphs:
                return _error(404, "unknown-method", f"no mapper graph for method {method!r}")
            graph = session.graphs[method]
            node_ids = body.get("nodeIds", [])
            known = {node.id for node in graph.nodes}
            bad = [i for i in node_ids if i not in known]
            if bad:
                return _error(400, "unknown-node", f"graph {method!r} has no nodes {bad}")
            members = [graph.node_by_id(i).members for i in node_ids]
            indices = np.unique(np.concatenate(members)) if members else np.array([], dtype=np.intp)
            return Selection.from_indices(
                indices, NodeBrush(graph=method, node_ids=tuple(int(i) for i in node_ids))
            )
        if kind == "points":
            indices = np.asarray(body.get("indices", []), dtype=np.int64)
            if indices.size and (indices.min() < 0 or indices.max() >= n):
                return _error(400, "index-out-of-range", f"indices must lie in [0, {n})")
            return Selection.from_indices(indices)
        if kind == "query":
            where = body.get("where", "")
            try:
                return run_query(where, session)
            except FilterSyntaxError as exc:
                return _error(
                    400, "query-syntax",
                    f"{exc} (position {exc.position}, expected {exc.expected})",
                )
            except UnknownColumnError as exc:
                return _error(400, "unknown-column", f"no column {exc.name!r}")
        return _error(400, "unknown-selection-type", "type must be nodes, points, or query")

    @app.post("/api/selection")
    async def selection(request: Request) -> Response:
        try:
            body = await request.json()
        except json.JSONDecodeError:
            return _error(400, "bad-json", "request body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "bad-json", "request body must be a JSON object")
        sel = _selection_from_body(body)
        if isinstance(sel, Response):
            return sel

        densities = {
            name: list(selection_density(graph, sel))
            for name, graph in session.graphs.items()
        }

        curves = {}
        divergences = {}
        for column in session.table.column_names:
            g_curve = global_curve(column)
            if len(sel):
                s_curve = kde(session.column_values(column), sel)
                divergence = distribution_divergence(g_curve, s_curve)
                selection_density_values = list(s_curve.density)
                selection_bandwidth = s_curve.bandwidth
            else:
                divergence = 0.0
                selection_density_values = None
                selection_bandwidth = None
            divergences[column] = divergence
            curves[column] = {
                "grid": list(g_curve.grid),
                "global": list(g_curve.density),
                "selection": selection_density_values,
                "bandwidthGlobal": g_curve.bandwidth,
                "bandwidthSelection": selection_bandwidth,
                "divergence": divergence,
            }
        kde_order = sorted(
            session.table.column_names,
            key=lambda c: (-divergences[c], session.table.column_names.index(c)),
        )

        averages = table_averages(session.table, sel)
        empty = len(sel) == 0

        return _json(
            {
                "indices": [int(i) for i in sel.indices],
                "provenance": _provenance_payload(sel.provenance),
                "densities": densities,
                "kde": curves,
                "kdeOrder": kde_order,
                "importance": _importance_payload(list(session.methods), sel),
                "tableAverages": {
                    "globalMean": list(averages.global_mean),
                    "selectionMean": None if empty else list(averages.selection_mean),
                    "difference": list(averages.difference),
                },
            }
        )

    return app
