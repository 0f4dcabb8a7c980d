"""Dense two-phase simplex with Bland's rule.

Small, self-contained and deterministic. Problems are stated over variables
with box bounds and rows ``a.x (<=|>=|==) b``; :func:`solve` rewrites them in
standard form, runs phase 1 on artificials and phase 2 on the objective.

Infeasible results carry a Farkas certificate expressed on the original
rows: multipliers ``y`` with ``y_i >= 0`` on ``>=`` rows, ``y_i <= 0`` on
``<=`` rows, free on equalities, such that the maximum of ``(sum y_i a_i).x``
over the variable box is strictly below ``sum y_i b_i``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels

log = logging.getLogger(__name__)

TOL = 1e-9
_PIVOT_TOL = 1e-11
# a run that loses feasibility on a nearly singular basis is repeated with
# coarser pivot thresholds
_PIVOT_LADDER = (_PIVOT_TOL, 1e-8, 1e-6)


class LpStatus(Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    NUMERICAL_FAILURE = "NumericalFailure"


_RELATIONS = ("<=", ">=", "==")


@dataclass
class LpProblem:
    objective: np.ndarray
    A: np.ndarray
    relations: list[str]
    b: np.ndarray
    bounds: list[tuple[float, float]] | None = None
    maximize: bool = False

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).ravel()
        nv = self.objective.shape[0]
        self.A = np.asarray(self.A, dtype=float).reshape(-1, nv)
        self.b = np.asarray(self.b, dtype=float).ravel()
        self.relations = list(self.relations)
        if self.A.shape[0] != self.b.shape[0] or len(self.relations) != self.b.shape[0]:
            raise ValueError("rows, relations and right-hand sides differ in number")
        bad = [r for r in self.relations if r not in _RELATIONS]
        if bad:
            raise ValueError(f"unknown relation {bad[0]!r}")
        if self.bounds is None:
            self.bounds = [(0.0, np.inf)] * nv
        if len(self.bounds) != nv:
            raise ValueError("one bound pair per variable is required")
        for lo, hi in self.bounds:
            if lo > hi:
                raise ValueError("lower bound above upper bound")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b)) and np.all(np.isfinite(self.objective))):
            raise ValueError("LP data must be finite")

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]

    def violation(self, x: np.ndarray) -> float:
        """Largest violation of rows and bounds at ``x``."""
        worst = 0.0
        lhs = self.A @ x
        for v, rel, rhs in zip(lhs, self.relations, self.b):
            if rel == "<=":
                worst = max(worst, v - rhs)
            elif rel == ">=":
                worst = max(worst, rhs - v)
            else:
                worst = max(worst, abs(v - rhs))
        for xj, (lo, hi) in zip(x, self.bounds):
            worst = max(worst, lo - xj, xj - hi)
        return worst

    def farkas_gap(self, y: np.ndarray) -> float:
        """``sum y_i b_i - max over the box of (sum y_i a_i).x``; positive
        values certify infeasibility. Returns ``-inf`` for a malformed ``y``."""
        y = np.asarray(y, dtype=float)
        for yi, rel in zip(y, self.relations):
            if (rel == ">=" and yi < -TOL) or (rel == "<=" and yi > TOL):
                return -np.inf
        coef = y @ self.A
        scale = max(1.0, float(np.abs(y).max(initial=0.0)) * float(np.abs(self.A).max(initial=0.0)))
        box = 0.0
        for cj, (lo, hi) in zip(coef, self.bounds):
            if abs(cj) <= TOL * scale:
                continue
            bound = hi if cj > 0 else lo
            if not np.isfinite(bound):
                return -np.inf
            box += cj * bound
        return float(y @ self.b - box)


@dataclass
class LpResult:
    status: LpStatus
    x: np.ndarray | None = None
    value: float | None = None
    farkas: np.ndarray | None = None
    iterations: int = 0
    detail: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def solve(problem: LpProblem, tol: float = TOL, backend: str | None = None, max_iter: int | None = None) -> LpResult:
    kern = _kernels.get_backend(backend)
    std = _standardize(problem)
    for pivot_tol in _PIVOT_LADDER:
        res = _solve_standard(problem, std, tol, kern, max_iter, pivot_tol)
        if res.status is not LpStatus.NUMERICAL_FAILURE:
            break
        log.debug("simplex retry after %s at pivot threshold %g", res.detail, pivot_tol)
    return res


def _solve_standard(problem: LpProblem, std: dict, tol: float, kern, max_iter: int | None, pivot_tol: float) -> LpResult:
    A, b = std["A"], std["b"]
    m, ns = A.shape
    max_iter = max_iter or 50 * (m + ns + 10)

    # phase 1: artificials on every row
    T = np.zeros((m + 1, ns + m + 1))
    T[1:, :ns] = A
    T[1:, ns : ns + m] = np.eye(m)
    T[1:, -1] = b
    T[0, :ns] = -A.sum(axis=0)
    T[0, -1] = -b.sum()
    basis = np.arange(ns, ns + m, dtype=np.int64)
    full = np.hstack([A, np.eye(m)])
    cost1 = np.append(np.zeros(ns), np.ones(m))
    status, it1 = _run(kern, T, basis, ns, max_iter, full, b, cost1, pivot_tol)
    if status != _kernels.OPTIMAL:
        return LpResult(LpStatus.NUMERICAL_FAILURE, iterations=it1, detail="phase 1 did not terminate")
    scale_b = 1.0 + float(np.abs(b).max(initial=0.0))
    if T[1:, -1].min(initial=0.0) < -10 * tol * scale_b:
        return LpResult(LpStatus.NUMERICAL_FAILURE, iterations=it1, detail="phase 1 lost feasibility")
    residual = -T[0, -1]
    if residual > 1e-2 * tol * scale_b:
        # small residuals only count when the certificate checks out, so
        # membership thresholds are not blurred by the feasibility tolerance
        y_std = 1.0 - T[0, ns : ns + m]
        z = std["flip"] * y_std
        y = z[: problem.A.shape[0]]
        gap = problem.farkas_gap(y)
        if gap > 0.0:
            return LpResult(LpStatus.INFEASIBLE, farkas=y, iterations=it1)
        if residual > tol * scale_b:
            log.debug("phase-1 certificate failed verification (gap %.3g)", gap)
            return LpResult(LpStatus.INFEASIBLE, iterations=it1, detail="certificate not verified")

    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= ns:
            # the largest entry keeps a slightly positive artificial from
            # being blown up by a tiny pivot
            row = np.abs(T[i + 1, :ns])
            j = int(np.argmax(row)) if ns else 0
            if ns and row[j] > pivot_tol:
                kern.pivot(T, i + 1, j)
                basis[i] = j

    # phase 2
    c = std["c"]
    T[0, :] = 0.0
    T[0, :ns] = c
    for i in range(m):
        j = basis[i]
        if j < ns and c[j] != 0.0:
            T[0, :] -= c[j] * T[i + 1, :]
    cost2 = np.append(c, np.zeros(m))
    status, it2 = _run(kern, T, basis, ns, max_iter, full, b, cost2, pivot_tol)
    if status == _kernels.OPTIMAL and it1 + it2 > m and _reinvert(T, basis, full, b, cost2):
        # polish: a fresh factorisation, then continue from the same basis
        status, extra = _run(kern, T, basis, ns, max_iter, full, b, cost2, pivot_tol)
        it2 += extra
    its = it1 + it2
    if status == _kernels.UNBOUNDED:
        return LpResult(LpStatus.UNBOUNDED, iterations=its)
    if status != _kernels.OPTIMAL:
        return LpResult(LpStatus.NUMERICAL_FAILURE, iterations=its, detail="phase 2 did not terminate")
    xs = np.zeros(ns)
    for i in range(m):
        if basis[i] < ns:
            xs[basis[i]] = T[i + 1, -1]
    x = std["shift"] + std["M"] @ xs
    viol = problem.violation(x)
    scale = 1.0 + float(np.abs(problem.b).max(initial=0.0)) + float(np.abs(x).max(initial=0.0))
    if viol > 10 * tol * scale:
        return LpResult(LpStatus.NUMERICAL_FAILURE, x=x, iterations=its, detail=f"primal violation {viol:.3g}")
    value = float(problem.objective @ x)
    return LpResult(LpStatus.OPTIMAL, x=x, value=value, iterations=its)


def _reinvert(T: np.ndarray, basis: np.ndarray, full: np.ndarray, b: np.ndarray, cost: np.ndarray) -> bool:
    """Rebuild the tableau from the basis to clear accumulated round-off."""
    Bm = full[:, basis]
    try:
        rows = np.linalg.solve(Bm, np.column_stack([full, b]))
    except np.linalg.LinAlgError:
        return False
    T[1:, :] = rows
    T[0, :-1] = cost - cost[basis] @ rows[:, :-1]
    T[0, -1] = -(cost[basis] @ rows[:, -1])
    for i, j in enumerate(basis):
        T[:, j] = 0.0
        T[i + 1, j] = 1.0
    return True


def _run(kern, T, basis, n_allowed, max_iter, full, b, cost, pivot_tol: float = _PIVOT_TOL, retries: int = 3):
    """Simplex with reinversion whenever a run ends without optimality."""
    status, total = kern.run_simplex(T, basis, n_allowed, pivot_tol, max_iter)
    for _ in range(retries):
        if status == _kernels.OPTIMAL or not _reinvert(T, basis, full, b, cost):
            break
        status, it = kern.run_simplex(T, basis, n_allowed, pivot_tol, max_iter)
        total += it
    return status, total


def _standardize(p: LpProblem) -> dict:
    """Rewrite as ``min c.x'  s.t.  A x' = b, x' >= 0`` with ``b >= 0``.

    Original variables are ``x = shift + M x'``; the structural columns come
    first, then upper-bound slacks, then row slacks.
    """
    nv = p.n_vars
    cols = []  # (var, sign)
    shift = np.zeros(nv)
    ub_rows = []  # (col index, width)
    for j, (lo, hi) in enumerate(p.bounds):
        if np.isfinite(lo):
            shift[j] = lo
            cols.append((j, 1.0))
            if np.isfinite(hi):
                ub_rows.append((len(cols) - 1, hi - lo))
        elif np.isfinite(hi):
            shift[j] = hi
            cols.append((j, -1.0))
        else:
            cols.append((j, 1.0))
            cols.append((j, -1.0))
    nstruct = len(cols)
    M = np.zeros((nv, nstruct))
    for k, (j, s) in enumerate(cols):
        M[j, k] = s

    rows = []
    rhs = []
    slack_sign = []
    AM = p.A @ M
    bprime = p.b - p.A @ shift
    for i, rel in enumerate(p.relations):
        rows.append(AM[i])
        rhs.append(bprime[i])
        slack_sign.append({"<=": 1.0, ">=": -1.0, "==": 0.0}[rel])
    for k, width in ub_rows:
        r = np.zeros(nstruct)
        r[k] = 1.0
        rows.append(r)
        rhs.append(width)
        slack_sign.append(1.0)
    m = len(rows)
    n_slack = sum(1 for s in slack_sign if s != 0.0)
    A = np.zeros((m, nstruct + n_slack))
    col = nstruct
    for i in range(m):
        A[i, :nstruct] = rows[i]
        if slack_sign[i] != 0.0:
            A[i, col] = slack_sign[i]
            col += 1
    b = np.asarray(rhs, dtype=float)
    flip = np.where(b < 0.0, -1.0, 1.0)
    A *= flip[:, None]
    b = b * flip
    c = np.zeros(A.shape[1])
    obj = -p.objective if p.maximize else p.objective
    c[:nstruct] = obj @ M
    Mfull = np.zeros((nv, A.shape[1]))
    Mfull[:, :nstruct] = M
    return {"A": np.ascontiguousarray(A), "b": b, "c": c, "flip": flip, "shift": shift, "M": Mfull}


# convenience builders ----------------------------------------------------------


def feasibility(A, relations, b, bounds=None, **kw) -> LpResult:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    return solve(LpProblem(np.zeros(A.shape[1]), A, relations, b, bounds), **kw)
