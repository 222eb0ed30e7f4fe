# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for factorization distances and bottleneck connectivity.

Factorizations arrive as an int32 array ``fact`` of shape (n, m): row i holds
the atom indices of the i-th factorization in non-decreasing order, padded
with -1, and ``lens[i]`` is its length.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline int _dist(const int[:, ::1] fact, const int[::1] lens, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef int li = lens[i], lj = lens[j]
    cdef int a = 0, b = 0, common = 0
    cdef int x, y
    while a < li and b < lj:
        x = fact[i, a]
        y = fact[j, b]
        if x == y:
            common += 1
            a += 1
            b += 1
        elif x < y:
            a += 1
        else:
            b += 1
    if li > lj:
        return li - common
    return lj - common


def distance_matrix(const int[:, ::1] fact, const int[::1] lens):
    cdef Py_ssize_t n = fact.shape[0], i, j
    out = np.zeros((n, n), dtype=np.int32)
    cdef int[:, ::1] D = out
    cdef int d
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = _dist(fact, lens, i, j)
                D[i, j] = d
                D[j, i] = d
    return out


def distance_row(const int[:, ::1] fact, const int[::1] lens, Py_ssize_t i):
    cdef Py_ssize_t n = fact.shape[0], j
    out = np.zeros(n, dtype=np.int32)
    cdef int[::1] r = out
    with nogil:
        for j in range(n):
            r[j] = _dist(fact, lens, i, j)
    return out


def bottleneck(const int[:, ::1] D):
    """Largest edge of a minimum spanning tree (Prim, O(n^2)); 0 when n <= 1."""
    cdef Py_ssize_t n = D.shape[0], i, j, best_j
    if n <= 1:
        return 0
    seen_arr = np.zeros(n, dtype=np.uint8)
    key_arr = np.empty(n, dtype=np.int64)
    cdef unsigned char[::1] seen = seen_arr
    cdef long long[::1] key = key_arr
    cdef long long best, worst = 0
    with nogil:
        for j in range(n):
            key[j] = D[0, j]
        seen[0] = 1
        for i in range(1, n):
            best = -1
            best_j = -1
            for j in range(n):
                if not seen[j] and (best < 0 or key[j] < best):
                    best = key[j]
                    best_j = j
            seen[best_j] = 1
            if best > worst:
                worst = best
            for j in range(n):
                if not seen[j] and D[best_j, j] < key[j]:
                    key[j] = D[best_j, j]
    return int(worst)


cdef Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def components_at(const int[:, ::1] fact, const int[::1] lens, int threshold):
    """Number of connected components of the graph {d <= threshold}, streamed
    pair by pair with union-find; no distance matrix is materialised."""
    cdef Py_ssize_t n = fact.shape[0], i, j, ri, rj
    parent_arr = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    cdef Py_ssize_t comps = n
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if _dist(fact, lens, i, j) <= threshold:
                    ri = _find(parent, i)
                    rj = _find(parent, j)
                    if ri != rj:
                        parent[ri] = rj
                        comps -= 1
    return int(comps)
