"""Pure-Python/numpy versions of the hot kernels.

Semantics match ``_ckernels.pyx`` exactly; the Cython module is preferred
when it is importable.
"""

from __future__ import annotations

import numpy as np

OPTIMAL = 0
UNBOUNDED = 1
ITERATION_CAP = 2

FOUND = 1
EXHAUSTED = 0
NODE_CAP = 2


def run_simplex(T: np.ndarray, basis: np.ndarray, n_allowed: int, tol: float, max_iter: int):
    """Minimise over a tableau in place using Bland's rule.

    Row 0 holds reduced costs with ``-objective`` in the last column; rows
    1..m are constraints with the right-hand side last. Only columns below
    ``n_allowed`` may enter the basis. Returns ``(status, iterations)``.
    """
    m = T.shape[0] - 1
    rhs = T.shape[1] - 1
    it = 0
    while True:
        enter = -1
        for j in range(n_allowed):
            if T[0, j] < -tol:
                enter = j
                break
        if enter < 0:
            return OPTIMAL, it
        if it >= max_iter:
            return ITERATION_CAP, it
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
            return UNBOUNDED, it
        pivot(T, leave, enter)
        basis[leave - 1] = enter
        it += 1


def pivot(T: np.ndarray, r: int, c: int) -> None:
    T[r, :] /= T[r, c]
    for i in range(T.shape[0]):
        if i != r:
            factor = T[i, c]
            if factor != 0.0:
                T[i, :] -= factor * T[r, :]
    T[:, c] = 0.0
    T[r, c] = 1.0


def dominance_scan(G: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Index of the first generator dominated by each row of F, or -1."""
    out = np.full(F.shape[0], -1, dtype=np.int64)
    if G.shape[0] == 0:
        return out
    hit = np.all(G[None, :, :] <= F[:, None, :], axis=2)
    any_hit = hit.any(axis=1)
    out[any_hit] = np.argmax(hit[any_hit], axis=1)
    return out


def scaling_scan(G: np.ndarray, F: np.ndarray):
    """For each row f of F, find a generator g and lam > 0 with f >= lam * g.

    Returns ``(index, lam)`` arrays; index is -1 when no generator admits a
    positive scaling below f.
    """
    k = F.shape[0]
    idx = np.full(k, -1, dtype=np.int64)
    lam = np.zeros(k)
    for r in range(k):
        f = F[r]
        for gi in range(G.shape[0]):
            ok, value = _scaling_interval(G[gi], f)
            if ok:
                idx[r] = gi
                lam[r] = value
                break
    return idx, lam


def _scaling_interval(g: np.ndarray, f: np.ndarray):
    lo = -np.inf
    hi = np.inf
    for w in range(g.shape[0]):
        gw = g[w]
        fw = f[w]
        if gw > 0.0:
            q = fw / gw
            if q < hi:
                hi = q
        elif gw < 0.0:
            q = fw / gw
            if q > lo:
                lo = q
        elif fw < 0.0:
            return False, 0.0
    if hi <= 0.0 or lo > hi:
        return False, 0.0
    if lo > 0.0:
        return True, float(lo)
    return True, float(min(hi, 1.0))


def integer_search(G: np.ndarray, f: np.ndarray, upper: np.ndarray, max_nodes: int):
    """Depth-first search for integers 0 <= n_i <= upper_i, sum n >= 1, with
    sum_i n_i * G[i] <= f componentwise (exact comparisons).

    Returns ``(status, n, nodes)``.
    """
    m, d = G.shape
    # suffix_min[k][w]: most negative reachable contribution of generators k..m-1
    suffix = np.zeros((m + 1, d))
    for k in range(m - 1, -1, -1):
        suffix[k] = suffix[k + 1] + np.minimum(0.0, upper[k] * G[k])
    suffix_min = suffix.tolist()
    # plain lists: per-node numpy calls dominate on these tiny vectors
    rows = G.tolist()
    caps = [int(u) for u in upper]
    fl = f.tolist()
    outcomes = range(d)
    n = [0] * m
    partial = [[0.0] * d for _ in range(m + 1)]
    nodes = 0

    level = 0
    counters = [-1] * (m + 1)
    while level >= 0:
        if level == m:
            if sum(n) >= 1 and all(partial[m][w] <= fl[w] for w in outcomes):
                return FOUND, np.array(n, dtype=np.int64), nodes
            level -= 1
            continue
        counters[level] += 1
        c = counters[level]
        if c > caps[level]:
            counters[level] = -1
            n[level] = 0
            level -= 1
            continue
        nodes += 1
        if nodes > max_nodes:
            return NODE_CAP, np.array(n, dtype=np.int64), nodes
        n[level] = c
        base, g, nxt, smin = partial[level], rows[level], partial[level + 1], suffix_min[level + 1]
        ok = True
        for w in outcomes:
            v = base[w] + c * g[w]
            nxt[w] = v
            if v + smin[w] > fl[w]:
                ok = False
        if ok:
            level += 1
            counters[level] = -1 if level < m else counters[level]
    return EXHAUSTED, np.zeros(m, dtype=np.int64), nodes
