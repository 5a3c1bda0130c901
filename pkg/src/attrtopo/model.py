"""Shared domain types and whole-session consistency checks.

Observation identity is a positional index into the feature table; every
cross-reference (node members, selections, projections) uses those indices.
All floats are 64-bit. A Session is immutable after construction: nothing
here mutates one, and downstream code treats the arrays as read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

FLOAT_ATOL = 1e-12

AGGREGATIONS = ("mean", "median", "max", "min", "std")


@dataclass(frozen=True)
class FeatureTable:
    """n observations by d named numeric features."""

    column_names: tuple[str, ...]
    values: np.ndarray  # (n, d) float64

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class AttributionSet:
    """Per-observation feature attributions from one explanation method."""

    method_name: str
    attributions: np.ndarray  # (n, d) float64


@dataclass(frozen=True)
class CoverParams:
    """Lens-cover and clustering hyperparameters for one Mapper build."""

    resolution: int
    gain: float = 0.4
    delta: float = 0.0
    seed: int = 0

    def validate(self) -> None:
        if self.resolution < 1:
            raise ValueError(f"resolution must be >= 1, got {self.resolution}")
        if not (0.0 < self.gain < 1.0):
            raise ValueError(f"gain must be in (0, 1), got {self.gain}")
        if self.delta < 0.0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")


@dataclass(frozen=True)
class MapperNode:
    id: int
    members: np.ndarray  # sorted observation indices
    interval_index: int
    lens_value: float  # mean predicted probability over members


@dataclass(frozen=True)
class MapperGraph:
    """Overlapping-cluster graph: nodes share an edge iff they share members."""

    nodes: tuple[MapperNode, ...]
    edges: tuple[tuple[int, int, int], ...]  # (node_a, node_b, shared_count), a < b
    params: CoverParams
    method_name: str = ""

    def node_by_id(self, node_id: int) -> MapperNode:
        return self.nodes[node_id]

    @property
    def n_components(self) -> int:
        parent = list(range(len(self.nodes)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _ in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(i) for i in range(len(self.nodes))})

    @property
    def cycle_count(self) -> int:
        """First Betti number: independent cycles of the graph."""
        if not self.nodes:
            return 0
        return len(self.edges) - len(self.nodes) + self.n_components


# Extended-persistence subtypes.
SUBTYPE_ORD = "Ord"
SUBTYPE_EXT = "Ext"
SUBTYPE_REL = "Rel"


@dataclass(frozen=True)
class PersistencePoint:
    birth: float
    death: float
    dim: int  # 0 or 1
    subtype: str  # Ord / Ext / Rel

    @property
    def persistence(self) -> float:
        return abs(self.death - self.birth)


@dataclass(frozen=True)
class PersistenceDiagram:
    points: tuple[PersistencePoint, ...]

    def in_dim(self, dim: int) -> list[PersistencePoint]:
        return [p for p in self.points if p.dim == dim]


@dataclass(frozen=True)
class NodeBrush:
    graph: str
    node_ids: tuple[int, ...]


@dataclass(frozen=True)
class ProjectionBrush:
    rect: tuple[float, float, float, float]  # x0, y0, x1, y1


@dataclass(frozen=True)
class QueryProvenance:
    text: str


Provenance = Union[NodeBrush, ProjectionBrush, QueryProvenance]


@dataclass(frozen=True)
class Selection:
    """A set of observation indices plus how the user produced it."""

    indices: np.ndarray  # sorted, unique
    provenance: Optional[Provenance] = None

    @staticmethod
    def from_indices(indices, provenance: Optional[Provenance] = None) -> "Selection":
        arr = np.unique(np.asarray(indices, dtype=np.intp))
        return Selection(indices=arr, provenance=provenance)

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class Session:
    """Immutable bundle of data, predictions, attributions and their topology."""

    table: FeatureTable
    preds: np.ndarray  # (n,) in [0, 1]
    labels: np.ndarray  # (n,) in {0, 1}
    methods: tuple[AttributionSet, ...]
    graphs: dict[str, MapperGraph]
    diagrams: dict[str, PersistenceDiagram]
    distances: np.ndarray  # (k, k) symmetric, zero diagonal
    projections: dict[str, np.ndarray]  # kind -> (n, 2); always contains "pca"
    provenance: dict = field(default_factory=dict)

    @property
    def method_names(self) -> list[str]:
        return [m.method_name for m in self.methods]

    def method(self, name: str) -> AttributionSet:
        for m in self.methods:
            if m.method_name == name:
                return m
        raise KeyError(name)

    def column_values(self, name: str) -> np.ndarray:
        """Resolve a column name to its per-observation values.

        Feature names win over the pseudo-columns ``pred`` and ``label``.
        """
        if name in self.table.column_names:
            return self.table.values[:, self.table.column_names.index(name)]
        if name == "pred":
            return self.preds
        if name == "label":
            return self.labels.astype(np.float64)
        raise KeyError(name)


def _check_matrix(name: str, arr: np.ndarray, violations: list[str]) -> None:
    if arr.ndim != 2:
        violations.append(f"{name}: expected 2-d matrix, got ndim={arr.ndim}")
        return
    if not np.all(np.isfinite(arr)):
        violations.append(f"{name}: contains NaN/Inf entries")


def _check_graph(name: str, graph: MapperGraph, preds: np.ndarray, violations: list[str]) -> None:
    n = len(preds)
    member_sets = {}
    for node in graph.nodes:
        mem = np.asarray(node.members)
        if mem.size == 0:
            violations.append(f"graph {name} node {node.id}: empty member set")
            continue
        if mem.min() < 0 or mem.max() >= n:
            violations.append(f"graph {name} node {node.id}: member index out of [0, {n})")
            continue
        member_sets[node.id] = set(int(i) for i in mem)
        lo, hi = preds[mem].min(), preds[mem].max()
        if not (lo - FLOAT_ATOL <= node.lens_value <= hi + FLOAT_ATOL):
            violations.append(
                f"graph {name} node {node.id}: lens value {node.lens_value} outside member range [{lo}, {hi}]"
            )
    seen = set()
    for a, b, shared in graph.edges:
        if a == b:
            violations.append(f"graph {name}: self-edge at node {a}")
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            violations.append(f"graph {name}: duplicate edge {key}")
        seen.add(key)
        if a not in member_sets or b not in member_sets:
            violations.append(f"graph {name}: edge {key} references unknown node")
            continue
        inter = len(member_sets[a] & member_sets[b])
        if inter == 0:
            violations.append(f"graph {name}: edge {key} with empty member intersection")
        elif inter != shared:
            violations.append(f"graph {name}: edge {key} shared count {shared} != |intersection| {inter}")
    # exhaustive re-check: every intersecting pair must be an edge
    ids = sorted(member_sets)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if member_sets[a] & member_sets[b] and (a, b) not in seen:
                violations.append(f"graph {name}: missing edge ({a}, {b}) for intersecting nodes")


def validate_session(session: Session) -> list[str]:
    """Return every invariant violation in the bundle; empty when consistent."""
    v: list[str] = []
    table = session.table

    _check_matrix("table", table.values, v)
    if table.values.ndim == 2:
        n, d = table.values.shape
    else:
        return v + ["table: cannot continue validation without a 2-d value matrix"]
    if n < 2:
        v.append(f"table: need at least 2 observations, got {n}")
    if len(table.column_names) != d:
        v.append(f"table: {len(table.column_names)} column names for {d} columns")
    if len(set(table.column_names)) != len(table.column_names):
        v.append("table: column names not distinct")

    if session.preds.shape != (n,):
        v.append(f"preds: expected shape ({n},), got {session.preds.shape}")
    else:
        bad = (session.preds < 0.0) | (session.preds > 1.0) | ~np.isfinite(session.preds)
        for i in np.nonzero(bad)[0]:
            v.append(f"preds[{i}]: prob out of [0,1]: {session.preds[i]}")

    if session.labels.shape != (n,):
        v.append(f"labels: expected shape ({n},), got {session.labels.shape}")
    elif not np.all(np.isin(session.labels, (0, 1))):
        v.append("labels: non-binary entries present")

    names = session.method_names
    if len(set(names)) != len(names):
        v.append("methods: method names not unique")
    for m in session.methods:
        _check_matrix(f"attributions[{m.method_name}]", m.attributions, v)
        if m.attributions.ndim == 2 and m.attributions.shape != (n, d):
            if m.attributions.shape[0] != n:
                v.append(f"attributions[{m.method_name}]: row count mismatch ({m.attributions.shape[0]} != {n})")
            if m.attributions.shape[1] != d:
                v.append(f"attributions[{m.method_name}]: column count mismatch ({m.attributions.shape[1]} != {d})")

    if set(session.graphs) != set(names):
        v.append(f"graphs: keys {sorted(session.graphs)} do not match method names {sorted(names)}")
    if set(session.diagrams) != set(names):
        v.append(f"diagrams: keys {sorted(session.diagrams)} do not match method names {sorted(names)}")
    for name, graph in session.graphs.items():
        _check_graph(name, graph, session.preds, v)
    for name, diagram in session.diagrams.items():
        for p in diagram.points:
            if not (np.isfinite(p.birth) and np.isfinite(p.death)):
                v.append(f"diagram {name}: non-finite point ({p.birth}, {p.death})")
            if p.dim == 0 and p.subtype not in (SUBTYPE_ORD, SUBTYPE_EXT):
                v.append(f"diagram {name}: dim-0 point with subtype {p.subtype}")
            if p.dim == 1 and p.subtype not in (SUBTYPE_EXT, SUBTYPE_REL):
                v.append(f"diagram {name}: dim-1 point with subtype {p.subtype}")

    k = len(names)
    if session.distances.shape != (k, k):
        v.append(f"distances: expected shape ({k}, {k}), got {session.distances.shape}")
    else:
        if not np.allclose(session.distances, session.distances.T, atol=FLOAT_ATOL, rtol=0):
            v.append("distances: not symmetric")
        if not np.allclose(np.diag(session.distances), 0.0, atol=FLOAT_ATOL, rtol=0):
            v.append("distances: nonzero diagonal")

    for kind, proj in session.projections.items():
        if proj.shape != (n, 2):
            v.append(f"projection[{kind}]: expected shape ({n}, 2), got {proj.shape}")
        elif not np.all(np.isfinite(proj)):
            v.append(f"projection[{kind}]: contains NaN/Inf")

    return v
