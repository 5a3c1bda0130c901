from __future__ import annotations

import json
import warnings

import numpy as np
import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from fastapi.testclient import TestClient

from attrtopo.service import create_app


@pytest.fixture()
def client(t1_session):
    return TestClient(create_app(t1_session))


def test_meta(client):
    body = client.get("/api/session/meta").json()
    assert body["methodNames"] == ["A", "B"]
    assert body["n"] == 4 and body["d"] == 2
    assert body["columns"] == ["f0", "f1"]
    assert body["params"]["A"] == {"resolution": 2, "gain": 0.4, "delta": 0.3, "seed": 0}
    assert body["provenance"]["gain"] == 0.4


def test_mapper_endpoint_with_coloring(client):
    body = client.get("/api/mapper/A", params={"color": "f0", "agg": "max"}).json()
    assert [n["id"] for n in body["nodes"]] == [0, 1]
    assert [n["size"] for n in body["nodes"]] == [2, 2]
    assert body["color"]["values"] == [0.1, 1.0]
    default = client.get("/api/mapper/A").json()
    assert default["color"]["attribute"] == "pred"
    assert default["color"]["values"] == pytest.approx([0.075, 0.925])


def test_mapper_errors(client):
    r = client.get("/api/mapper/Z")
    assert r.status_code == 404
    assert set(r.json()) == {"code", "message", "stage"}
    assert r.json()["code"] == "unknown-method"
    assert client.get("/api/mapper/A", params={"agg": "sum"}).status_code == 400
    assert client.get("/api/mapper/A", params={"color": "zzz"}).status_code == 400


def test_distance_matrix(client):
    body = client.get("/api/distance-matrix").json()
    assert body["methods"] == ["A", "B"]
    matrix = np.array(body["matrix"])
    assert matrix.shape == (2, 2)
    assert np.all(matrix == matrix.T)


def test_projection(client):
    body = client.get("/api/projection", params={"kind": "pca"}).json()
    assert len(body["points"]) == 4
    assert client.get("/api/projection", params={"kind": "umap"}).status_code == 404


def test_attributions_endpoint(client):
    body = client.get("/api/attributions", params={"methods": "A,B"}).json()
    assert body["methods"] == ["A", "B"]
    assert body["importance"]["features"] == ["f0", "f1"]
    assert set(body["importance"]["levels"]) == {"A", "B"}
    assert client.get("/api/attributions", params={"methods": "A,zzz"}).status_code == 404


def test_selection_three_types_share_schema_and_analytics(client):
    by_query = client.post("/api/selection", json={"type": "query", "where": "pred > 0.5"})
    by_points = client.post("/api/selection", json={"type": "points", "indices": [2, 3]})
    by_nodes = client.post("/api/selection", json={"type": "nodes", "graph": "A", "nodeIds": [1]})
    assert by_query.status_code == by_points.status_code == by_nodes.status_code == 200
    bodies = [r.json() for r in (by_query, by_points, by_nodes)]
    assert all(set(b) == set(bodies[0]) for b in bodies)
    for b in bodies:
        b.pop("provenance")
    # identical index set -> identical analytics regardless of path
    assert bodies[0] == bodies[1] == bodies[2]

    body = bodies[0]
    assert body["indices"] == [2, 3]
    assert body["densities"] == {"A": [0.0, 1.0], "B": [0.0, 1.0]}
    assert body["tableAverages"]["selectionMean"] == pytest.approx([0.95, 1.0])
    assert set(body["kde"]) == {"f0", "f1"}
    assert sorted(body["kdeOrder"]) == ["f0", "f1"]
    for curve in body["kde"].values():
        assert len(curve["grid"]) == 128
        assert curve["selection"] is not None
        assert curve["divergence"] >= 0.0


def test_selection_empty(client):
    body = client.post("/api/selection", json={"type": "points", "indices": []}).json()
    assert body["indices"] == []
    assert body["densities"]["A"] == [0.0, 0.0]
    assert body["tableAverages"]["selectionMean"] is None
    assert body["tableAverages"]["difference"] == [0.0, 0.0]
    for curve in body["kde"].values():
        assert curve["selection"] is None
        assert curve["divergence"] == 0.0


def test_selection_errors(client):
    r = client.post("/api/selection", json={"type": "query", "where": "age >"})
    assert r.status_code == 400 and r.json()["code"] == "query-syntax"
    r = client.post("/api/selection", json={"type": "query", "where": "zzz > 1"})
    assert r.status_code == 400 and r.json()["code"] == "unknown-column"
    r = client.post("/api/selection", json={"type": "points", "indices": [99]})
    assert r.status_code == 400 and r.json()["code"] == "index-out-of-range"
    r = client.post("/api/selection", json={"type": "nodes", "graph": "A", "nodeIds": [9]})
    assert r.status_code == 400 and r.json()["code"] == "unknown-node"
    r = client.post("/api/selection", json={"type": "volume"})
    assert r.status_code == 400
    r = client.post("/api/selection", content=b"not json")
    assert r.status_code == 400 and r.json()["code"] == "bad-json"


def test_identical_requests_are_byte_identical(client):
    r1 = client.post("/api/selection", json={"type": "query", "where": "pred > 0.5"})
    r2 = client.post("/api/selection", json={"type": "query", "where": "pred > 0.5"})
    assert r1.content == r2.content
    g1 = client.get("/api/mapper/A")
    g2 = client.get("/api/mapper/A")
    assert g1.content == g2.content
    # sorted keys throughout
    assert list(json.loads(r1.content)) == sorted(json.loads(r1.content))
