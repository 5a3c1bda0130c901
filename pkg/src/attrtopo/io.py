"""File ingestion and the versioned session artifact.

Inputs are headered CSV files: the feature table, a single-column ``pred``
file, a single-column ``label`` file, one attribution file per method sharing
the dataset's header (same column order), and optional two-column ``x,y``
projection files. The whole computed session round-trips through one JSON
document (top-level ``version: "1"``); floats survive bit-for-bit because
JSON serialization uses repr.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .model import (
    AttributionSet,
    CoverParams,
    FeatureTable,
    MapperGraph,
    MapperNode,
    PersistenceDiagram,
    PersistencePoint,
    Session,
    validate_session,
)

ARTIFACT_VERSION = "1"

PROJECTION_KINDS = ("tsne", "umap", "external")


class MissingFile(FileNotFoundError):
    def __init__(self, path: Union[str, Path]):
        self.path = str(path)
        super().__init__(f"missing file: {self.path}")


class ParseError(ValueError):
    """Structural CSV problem at a 1-based (line, column)."""

    def __init__(self, path: Union[str, Path], line: int, column: int, detail: str):
        self.path = str(path)
        self.line = line
        self.column = column
        super().__init__(f"{self.path}:{line}:{column}: {detail}")


class NonNumericCell(ValueError):
    def __init__(self, path: Union[str, Path], line: int, column: int, cell: str):
        self.path = str(path)
        self.line = line
        self.column = column
        self.cell = cell
        super().__init__(f"{self.path}:{line}:{column}: non-numeric cell {cell!r}")


class ShapeMismatch(ValueError):
    def __init__(self, expected, got, detail: str = ""):
        self.expected = expected
        self.got = got
        msg = f"expected {expected}, got {got}"
        if detail:
            msg = f"{detail}: {msg}"
        super().__init__(msg)


class VersionMismatch(ValueError):
    def __init__(self, found):
        self.found = found
        super().__init__(f"unsupported artifact version {found!r}, expected {ARTIFACT_VERSION!r}")


class CorruptArtifact(ValueError):
    pass


@dataclass(frozen=True)
class SessionManifest:
    """Where the input files live, plus pipeline options for provenance."""

    data_path: str
    preds_path: str
    labels_path: str
    attr_entries: tuple[tuple[str, str], ...]  # (method name, path)
    projection_entries: tuple[tuple[str, str], ...] = ()  # (kind, path)
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        if len(self.attr_entries) < 2:
            raise ValueError(
                f"need at least 2 attribution entries to compare, got {len(self.attr_entries)}"
            )
        names = [name for name, _ in self.attr_entries]
        if len(set(names)) != len(names):
            raise ValueError(f"attribution method names not distinct: {names}")
        paths = [self.data_path, self.preds_path, self.labels_path]
        paths += [p for _, p in self.attr_entries]
        paths += [p for _, p in self.projection_entries]
        if len(set(paths)) != len(paths):
            raise ValueError("manifest paths are not distinct")
        for kind, _ in self.projection_entries:
            if kind not in PROJECTION_KINDS:
                raise ValueError(f"unknown projection kind {kind!r}; expected one of {PROJECTION_KINDS}")


def _read_csv(path: Union[str, Path]) -> tuple[list[str], np.ndarray]:
    """Strict numeric CSV with a mandatory header row."""
    p = Path(path)
    if not p.exists():
        raise MissingFile(p)
    with p.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(p, 1, 1, "empty file, expected a header row") from None
        header = [h.strip() for h in header]
        if any(not h for h in header):
            raise ParseError(p, 1, header.index("") + 1, "empty header field")
        rows: list[list[float]] = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ParseError(
                    p, line_no, min(len(row), len(header)) + 1,
                    f"expected {len(header)} fields, found {len(row)}",
                )
            parsed = []
            for col_no, cell in enumerate(row, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise NonNumericCell(p, line_no, col_no, cell) from None
            rows.append(parsed)
    if not rows:
        raise ParseError(p, 2, 1, "no data rows")
    return header, np.array(rows, dtype=np.float64)


def load_session_inputs(
    manifest: SessionManifest,
) -> tuple[FeatureTable, np.ndarray, np.ndarray, list[AttributionSet], dict[str, np.ndarray]]:
    manifest.validate()

    columns, values = _read_csv(manifest.data_path)
    table = FeatureTable(column_names=tuple(columns), values=values)
    n, d = values.shape

    pred_header, pred_rows = _read_csv(manifest.preds_path)
    if pred_header != ["pred"]:
        raise ShapeMismatch(["pred"], pred_header, "predictions header")
    if pred_rows.shape[0] != n:
        raise ShapeMismatch(n, pred_rows.shape[0], "prediction row count")
    preds = pred_rows[:, 0]

    label_header, label_rows = _read_csv(manifest.labels_path)
    if label_header != ["label"]:
        raise ShapeMismatch(["label"], label_header, "labels header")
    if label_rows.shape[0] != n:
        raise ShapeMismatch(n, label_rows.shape[0], "label row count")
    labels = label_rows[:, 0].astype(np.int64)

    methods: list[AttributionSet] = []
    for name, path in manifest.attr_entries:
        attr_header, attr_rows = _read_csv(path)
        if attr_header != list(columns):
            raise ShapeMismatch(list(columns), attr_header, "column order mismatch")
        if attr_rows.shape != (n, d):
            raise ShapeMismatch((n, d), attr_rows.shape, f"attribution shape for {name}")
        methods.append(AttributionSet(method_name=name, attributions=attr_rows))

    projections: dict[str, np.ndarray] = {}
    for kind, path in manifest.projection_entries:
        proj_header, proj_rows = _read_csv(path)
        if proj_header != ["x", "y"]:
            raise ShapeMismatch(["x", "y"], proj_header, f"projection header for {kind}")
        if proj_rows.shape[0] != n:
            raise ShapeMismatch(n, proj_rows.shape[0], f"projection row count for {kind}")
        projections[kind] = proj_rows

    return table, preds, labels, methods, projections


def _graph_to_json(graph: MapperGraph) -> dict:
    return {
        "nodes": [
            {
                "id": node.id,
                "members": [int(i) for i in node.members],
                "intervalIndex": node.interval_index,
                "lensValue": node.lens_value,
            }
            for node in graph.nodes
        ],
        "edges": [[a, b, shared] for a, b, shared in graph.edges],
        "params": {
            "resolution": graph.params.resolution,
            "gain": graph.params.gain,
            "delta": graph.params.delta,
            "seed": graph.params.seed,
        },
        "methodName": graph.method_name,
    }


def _graph_from_json(obj: dict) -> MapperGraph:
    params = obj["params"]
    return MapperGraph(
        nodes=tuple(
            MapperNode(
                id=int(n["id"]),
                members=np.array(n["members"], dtype=np.intp),
                interval_index=int(n["intervalIndex"]),
                lens_value=float(n["lensValue"]),
            )
            for n in obj["nodes"]
        ),
        edges=tuple((int(a), int(b), int(s)) for a, b, s in obj["edges"]),
        params=CoverParams(
            resolution=int(params["resolution"]),
            gain=float(params["gain"]),
            delta=float(params["delta"]),
            seed=int(params["seed"]),
        ),
        method_name=str(obj["methodName"]),
    )


def session_to_json(session: Session) -> dict:
    return {
        "version": ARTIFACT_VERSION,
        "columns": list(session.table.column_names),
        "data": session.table.values.tolist(),
        "preds": session.preds.tolist(),
        "labels": [int(x) for x in session.labels],
        "methods": [
            {"name": m.method_name, "attributions": m.attributions.tolist()}
            for m in session.methods
        ],
        "graphs": {name: _graph_to_json(g) for name, g in session.graphs.items()},
        "diagrams": {
            name: [
                {"birth": p.birth, "death": p.death, "dim": p.dim, "subtype": p.subtype}
                for p in diag.points
            ]
            for name, diag in session.diagrams.items()
        },
        "distances": session.distances.tolist(),
        "projections": {kind: proj.tolist() for kind, proj in session.projections.items()},
        "provenance": session.provenance,
    }


def session_from_json(doc: dict) -> Session:
    version = doc.get("version")
    if version != ARTIFACT_VERSION:
        raise VersionMismatch(version)
    try:
        table = FeatureTable(
            column_names=tuple(str(c) for c in doc["columns"]),
            values=np.array(doc["data"], dtype=np.float64),
        )
        session = Session(
            table=table,
            preds=np.array(doc["preds"], dtype=np.float64),
            labels=np.array(doc["labels"], dtype=np.int64),
            methods=tuple(
                AttributionSet(
                    method_name=str(m["name"]),
                    attributions=np.array(m["attributions"], dtype=np.float64),
                )
                for m in doc["methods"]
            ),
            graphs={name: _graph_from_json(g) for name, g in doc["graphs"].items()},
            diagrams={
                name: PersistenceDiagram(
                    points=tuple(
                        PersistencePoint(
                            birth=float(p["birth"]),
                            death=float(p["death"]),
                            dim=int(p["dim"]),
                            subtype=str(p["subtype"]),
                        )
                        for p in pts
                    )
                )
                for name, pts in doc["diagrams"].items()
            },
            distances=np.array(doc["distances"], dtype=np.float64),
            projections={
                kind: np.array(proj, dtype=np.float64)
                for kind, proj in doc["projections"].items()
            },
            provenance=doc.get("provenance", {}),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptArtifact(f"artifact structure invalid: {exc}") from exc
    if session.distances.ndim != 2:
        raise CorruptArtifact("distance matrix is not 2-d")
    return session


def save_session(session: Session, path: Union[str, Path]) -> None:
    violations = validate_session(session)
    if violations:
        raise ValueError("session fails validation: " + "; ".join(violations[:5]))
    doc = session_to_json(session)
    Path(path).write_text(
        json.dumps(doc, sort_keys=True, allow_nan=False, separators=(",", ":")),
        encoding="utf-8",
    )


def load_session(path: Union[str, Path]) -> Session:
    p = Path(path)
    if not p.exists():
        raise MissingFile(p)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorruptArtifact(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CorruptArtifact("artifact root is not an object")
    return session_from_json(doc)
