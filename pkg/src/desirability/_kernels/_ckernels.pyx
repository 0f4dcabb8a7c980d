# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see _pykernels for semantics)."""

import numpy as np

cdef int OPTIMAL = 0
cdef int UNBOUNDED = 1
cdef int ITERATION_CAP = 2


cdef void _pivot(double[:, ::1] T, Py_ssize_t r, Py_ssize_t c) noexcept nogil:
    cdef Py_ssize_t i, j, rows = T.shape[0], cols = T.shape[1]
    cdef double p = T[r, c], factor
    for j in range(cols):
        T[r, j] = T[r, j] / p
    for i in range(rows):
        if i == r:
            continue
        factor = T[i, c]
        if factor != 0.0:
            for j in range(cols):
                T[i, j] = T[i, j] - factor * T[r, j]
    for i in range(rows):
        T[i, c] = 0.0
    T[r, c] = 1.0


def run_simplex(double[:, ::1] T, long long[::1] basis, Py_ssize_t n_allowed, double tol, long long max_iter):
    cdef Py_ssize_t m = T.shape[0] - 1, rhs = T.shape[1] - 1
    cdef Py_ssize_t i, j, enter, leave
    cdef long long it = 0
    cdef int status = OPTIMAL
    cdef double a, ratio, best
    with nogil:
        while True:
            enter = -1
            for j in range(n_allowed):
                if T[0, j] < -tol:
                    enter = j
                    break
            if enter < 0:
                status = OPTIMAL
                break
            if it >= max_iter:
                status = ITERATION_CAP
                break
            leave = -1
            best = 0.0
            for i in range(1, m + 1):
                a = T[i, enter]
                if a > tol:
                    ratio = T[i, rhs] / a
                    if leave < 0 or ratio < best - 1e-12 or (ratio <= best + 1e-12 and basis[i - 1] < basis[leave - 1]):
                        leave = i
                        best = ratio
            if leave < 0:
                status = UNBOUNDED
                break
            _pivot(T, leave, enter)
            basis[leave - 1] = enter
            it += 1
    return status, it


def pivot(double[:, ::1] T, Py_ssize_t r, Py_ssize_t c):
    _pivot(T, r, c)


def dominance_scan(double[:, ::1] G, double[:, ::1] F):
    cdef Py_ssize_t k = F.shape[0], m = G.shape[0], d = F.shape[1]
    out_arr = np.full(k, -1, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t r, gi, w
    cdef bint ok
    with nogil:
        for r in range(k):
            for gi in range(m):
                ok = True
                for w in range(d):
                    if G[gi, w] > F[r, w]:
                        ok = False
                        break
                if ok:
                    out[r] = gi
                    break
    return out_arr


def scaling_scan(double[:, ::1] G, double[:, ::1] F):
    cdef Py_ssize_t k = F.shape[0], m = G.shape[0], d = F.shape[1]
    idx_arr = np.full(k, -1, dtype=np.int64)
    lam_arr = np.zeros(k)
    cdef long long[::1] idx = idx_arr
    cdef double[::1] lam = lam_arr
    cdef Py_ssize_t r, gi, w
    cdef double lo, hi, q, gw, fw
    cdef bint ok
    with nogil:
        for r in range(k):
            for gi in range(m):
                lo = -1.0 / 0.0
                hi = 1.0 / 0.0
                ok = True
                for w in range(d):
                    gw = G[gi, w]
                    fw = F[r, w]
                    if gw > 0.0:
                        q = fw / gw
                        if q < hi:
                            hi = q
                    elif gw < 0.0:
                        q = fw / gw
                        if q > lo:
                            lo = q
                    elif fw < 0.0:
                        ok = False
                        break
                if not ok or hi <= 0.0 or lo > hi:
                    continue
                idx[r] = gi
                if lo > 0.0:
                    lam[r] = lo
                elif hi < 1.0:
                    lam[r] = hi
                else:
                    lam[r] = 1.0
                break
    return idx_arr, lam_arr


def integer_search(double[:, ::1] G, double[::1] f, long long[::1] upper, long long max_nodes):
    cdef Py_ssize_t m = G.shape[0], d = G.shape[1]
    cdef Py_ssize_t k, w, level
    suffix_arr = np.zeros((m + 1, d))
    partial_arr = np.zeros((m + 1, d))
    n_arr = np.zeros(m, dtype=np.int64)
    counters_arr = np.full(m + 1, -1, dtype=np.int64)
    cdef double[:, ::1] suffix_min = suffix_arr
    cdef double[:, ::1] partial = partial_arr
    cdef long long[::1] n = n_arr
    cdef long long[::1] counters = counters_arr
    cdef long long nodes = 0, c, total
    cdef double t
    cdef bint ok
    cdef int status = 0
    with nogil:
        for k in range(m - 1, -1, -1):
            for w in range(d):
                t = upper[k] * G[k, w]
                if t > 0.0:
                    t = 0.0
                suffix_min[k, w] = suffix_min[k + 1, w] + t
        level = 0
        while level >= 0:
            if level == m:
                total = 0
                for k in range(m):
                    total += n[k]
                ok = total >= 1
                if ok:
                    for w in range(d):
                        if partial[m, w] > f[w]:
                            ok = False
                            break
                if ok:
                    status = 1
                    break
                level -= 1
                continue
            counters[level] += 1
            c = counters[level]
            if c > upper[level]:
                counters[level] = -1
                n[level] = 0
                level -= 1
                continue
            nodes += 1
            if nodes > max_nodes:
                status = 2
                break
            n[level] = c
            ok = True
            for w in range(d):
                partial[level + 1, w] = partial[level, w] + c * G[level, w]
                if partial[level + 1, w] + suffix_min[level + 1, w] > f[w]:
                    ok = False
            if ok:
                level += 1
                if level < m:
                    counters[level] = -1
    if status == 0:
        return 0, np.zeros(m, dtype=np.int64), nodes
    return status, n_arr.copy(), nodes
