"""Topology-based comparison of feature-attribution sets.

Builds one Mapper graph per attribution method with the model's predicted
probability as the lens, selects cover parameters by bootstrap stability,
summarizes away redundant nodes, and compares methods through the bottleneck
distance between extended persistence diagrams. A small HTTP service exposes
the results to interactive clients.
"""

from ._kernels import BACKEND
from .mapper import build_cover, build_mapper
from .model import (
    AttributionSet,
    CoverParams,
    FeatureTable,
    MapperGraph,
    MapperNode,
    PersistenceDiagram,
    PersistencePoint,
    Selection,
    Session,
    validate_session,
)
from .summarize import summarize_graph, summarize_to_fixpoint
from .topology import (
    bottleneck,
    distance_matrix,
    extended_persistence,
    node_filtration,
)

__version__ = "0.1.0"

__all__ = [
    "AttributionSet",
    "BACKEND",
    "CoverParams",
    "FeatureTable",
    "MapperGraph",
    "MapperNode",
    "PersistenceDiagram",
    "PersistencePoint",
    "Selection",
    "Session",
    "bottleneck",
    "build_cover",
    "build_mapper",
    "distance_matrix",
    "extended_persistence",
    "node_filtration",
    "summarize_graph",
    "summarize_to_fixpoint",
    "validate_session",
    "__version__",
]
