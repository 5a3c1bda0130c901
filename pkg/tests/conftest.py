from __future__ import annotations

import numpy as np
import pytest

from attrtopo.model import AttributionSet, FeatureTable
from attrtopo.pipeline import build_session

# The 4-point fixture used throughout: two tight pairs at opposite ends of
# the prediction range, attributions equal to the features for method A and
# negated for method B.
T1_FEATURES = np.array([[0.0, 0.0], [0.1, 0.0], [0.9, 1.0], [1.0, 1.0]])
T1_PREDS = np.array([0.05, 0.10, 0.90, 0.95])
T1_LABELS = np.array([0, 0, 1, 1])


@pytest.fixture()
def t1_table() -> FeatureTable:
    return FeatureTable(column_names=("f0", "f1"), values=T1_FEATURES.copy())


@pytest.fixture()
def t1_methods() -> list[AttributionSet]:
    return [
        AttributionSet("A", T1_FEATURES.copy()),
        AttributionSet("B", -T1_FEATURES.copy()),
    ]


@pytest.fixture()
def t1_session(t1_table, t1_methods):
    return build_session(
        t1_table,
        T1_PREDS.copy(),
        T1_LABELS.copy(),
        t1_methods,
        resolution=2,
        delta=0.3,
        seed=0,
    )


def write_t1_csvs(directory):
    """Write the fixture as the four input CSVs; returns their paths."""
    data = directory / "data.csv"
    preds = directory / "preds.csv"
    labels = directory / "labels.csv"
    attr_a = directory / "attr_a.csv"
    attr_b = directory / "attr_b.csv"
    rows = lambda M: "\n".join(",".join(repr(float(v)) for v in row) for row in M)
    data.write_text("f0,f1\n" + rows(T1_FEATURES) + "\n")
    preds.write_text("pred\n" + "\n".join(repr(float(v)) for v in T1_PREDS) + "\n")
    labels.write_text("label\n" + "\n".join(str(int(v)) for v in T1_LABELS) + "\n")
    attr_a.write_text("f0,f1\n" + rows(T1_FEATURES) + "\n")
    attr_b.write_text("f0,f1\n" + rows(-T1_FEATURES) + "\n")
    return data, preds, labels, attr_a, attr_b


@pytest.fixture()
def t1_csvs(tmp_path):
    return write_t1_csvs(tmp_path)
