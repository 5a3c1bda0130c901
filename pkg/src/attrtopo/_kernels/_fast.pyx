# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the two loops that dominate a parameter search:
one-sided Hausdorff distances of bootstrap resamples and threshold
single-linkage clustering inside cover bins."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def hausdorff_to_subset(points, subset):
    """One-sided Hausdorff distance from all rows to the subset rows."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] sub = np.unique(np.asarray(subset, dtype=np.intp))
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t d = pts.shape[1]
    cdef Py_ssize_t m = sub.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] in_sub = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t i, j, k
    for k in range(m):
        in_sub[sub[k]] = 1

    cdef double best = 0.0  # running max of per-point min squared distances
    cdef double cur, acc, diff
    for i in range(n):
        if in_sub[i]:
            continue
        cur = -1.0
        for j in range(m):
            acc = 0.0
            for k in range(d):
                diff = pts[i, k] - pts[sub[j], k]
                acc += diff * diff
                if cur >= 0.0 and acc >= cur:
                    break
            if cur < 0.0 or acc < cur:
                cur = acc
                if cur <= best:
                    break  # cannot raise the running max
        if cur > best:
            best = cur
    return float(sqrt(best))


def single_linkage_labels(points, double delta):
    """Connected components of the <= delta pairwise-distance graph,
    labelled by first occurrence."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t m = pts.shape[0]
    cdef Py_ssize_t d = pts.shape[1]
    if m == 0:
        return np.empty(0, dtype=np.intp)
    cdef double thresh = delta * delta
    cdef cnp.ndarray[cnp.intp_t, ndim=1] parent = np.arange(m, dtype=np.intp)
    cdef Py_ssize_t i, j, k, ri, rj
    cdef double acc, diff

    for i in range(m):
        for j in range(i + 1, m):
            # union-find with path halving
            ri = i
            while parent[ri] != ri:
                parent[ri] = parent[parent[ri]]
                ri = parent[ri]
            rj = j
            while parent[rj] != rj:
                parent[rj] = parent[parent[rj]]
                rj = parent[rj]
            if ri == rj:
                continue
            acc = 0.0
            for k in range(d):
                diff = pts[i, k] - pts[j, k]
                acc += diff * diff
                if acc > thresh:
                    break
            if acc <= thresh:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj

    cdef cnp.ndarray[cnp.intp_t, ndim=1] labels = np.empty(m, dtype=np.intp)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] name = np.full(m, -1, dtype=np.intp)
    cdef Py_ssize_t nxt = 0
    for i in range(m):
        ri = i
        while parent[ri] != ri:
            parent[ri] = parent[parent[ri]]
            ri = parent[ri]
        if name[ri] < 0:
            name[ri] = nxt
            nxt += 1
        labels[i] = name[ri]
    return labels
