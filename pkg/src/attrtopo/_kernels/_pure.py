"""NumPy fallback implementations of the hot kernels.

Same contracts as the compiled versions in ``_fast.pyx``; selected at import
time when the extension is unavailable or ``ATTRTOPO_PURE`` is set.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

_CHUNK = 512


def _sq_dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, (len(a), len(b)), clipped at zero."""
    d2 = (a * a).sum(axis=1)[:, None] + (b * b).sum(axis=1)[None, :] - 2.0 * (a @ b.T)
    np.maximum(d2, 0.0, out=d2)
    return d2


def hausdorff_to_subset(points: np.ndarray, subset: np.ndarray) -> float:
    """One-sided Hausdorff distance from ``points`` to ``points[subset]``.

    max over all rows of the distance to the nearest subset row; rows that are
    themselves in the subset contribute zero.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    subset = np.unique(np.asarray(subset, dtype=np.intp))
    mask = np.ones(len(points), dtype=bool)
    mask[subset] = False
    outside = np.nonzero(mask)[0]
    if outside.size == 0:
        return 0.0
    sub = points[subset]
    worst = 0.0
    for start in range(0, outside.size, _CHUNK):
        chunk = points[outside[start : start + _CHUNK]]
        worst = max(worst, _sq_dists(chunk, sub).min(axis=1).max())
    return float(np.sqrt(worst))


def single_linkage_labels(points: np.ndarray, delta: float) -> np.ndarray:
    """Cluster rows by chains of pairwise Euclidean distances <= delta.

    Equivalent to cutting a single-linkage dendrogram at ``delta``. Labels are
    consecutive integers numbered by first occurrence, so the output is
    deterministic.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    m = len(points)
    if m == 0:
        return np.empty(0, dtype=np.intp)
    thresh = float(delta) * float(delta)
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    for start in range(0, m, _CHUNK):
        stop = min(start + _CHUNK, m)
        d2 = _sq_dists(points[start:stop], points)
        r, c = np.nonzero(d2 <= thresh)
        keep = start + r < c  # upper triangle only
        rows.append(start + r[keep])
        cols.append(c[keep])
    i = np.concatenate(rows)
    j = np.concatenate(cols)
    adj = coo_matrix((np.ones(len(i), dtype=np.int8), (i, j)), shape=(m, m))
    _, raw = connected_components(adj, directed=False)
    return _canonical_labels(raw)


def _canonical_labels(raw: np.ndarray) -> np.ndarray:
    order = np.empty(raw.max() + 1, dtype=np.intp) if raw.size else np.empty(0, dtype=np.intp)
    order.fill(-1)
    labels = np.empty(raw.shape, dtype=np.intp)
    nxt = 0
    for idx, r in enumerate(raw):
        if order[r] < 0:
            order[r] = nxt
            nxt += 1
        labels[idx] = order[r]
    return labels
