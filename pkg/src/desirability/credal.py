"""Credal sets: linear previsions compatible with a set of desirable gambles.

A linear prevision that is nonnegative on the generators stays nonnegative on
sums, positive scalings and dominating gambles, so for every built-in closure
the compatible previsions are cut out of the simplex by the generators alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .consistency import ConsistencyReport, _unit_scaled, avoids_partial_loss, avoids_sure_loss, sure_loss_multipliers
from .gambles import DimensionError, NumericalError, UnsupportedSpecError, as_gamble, as_gambles, is_measurable, vanishes_outside
from .lp import LpProblem, LpStatus, solve
from .operators import ClosureSpec, DesirSet, GeneratedSet, Kind

MAX_VERTEX_DIM = 5
DEDUP_TOL = 1e-9


@dataclass(frozen=True)
class LinearPrevision:
    p: tuple

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-12 * max(1, p.shape[0]):
            raise ValueError("a linear prevision is a probability vector")
        object.__setattr__(self, "p", tuple(float(x) for x in p))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.p)

    def __call__(self, f) -> float:
        return float(self.vector @ as_gamble(f, len(self.p)))

    def to_dict(self) -> list:
        return list(self.p)


def _normalize(p: np.ndarray) -> np.ndarray:
    p = np.maximum(p, 0.0)
    return p / p.sum()


@dataclass
class EmptinessReport:
    empty: bool
    point: LinearPrevision | None = None
    certificate: dict | None = None

    def __bool__(self) -> bool:
        return self.empty

    def to_dict(self) -> dict:
        return {"empty": self.empty, "point": None if self.point is None else self.point.to_dict(), "certificate": self.certificate}


@dataclass
class CredalPolytope:
    """``{p in simplex : p . g >= 0 for every constraint g}``."""

    constraints: np.ndarray
    n: int
    _vertices: list | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.constraints = as_gambles(self.constraints, self.n)
        if not np.all(np.isfinite(self.constraints)):
            raise ValueError("constraints must be finite")

    def contains(self, p, tol: float = 1e-9) -> bool:
        p = np.asarray(p, dtype=float)
        if np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
            return False
        return bool(np.all(self.constraints @ p >= -tol))

    def is_empty(self, tol: float = 1e-9) -> EmptinessReport:
        return is_empty(self, tol)

    def vertices(self) -> list[LinearPrevision]:
        if self._vertices is None:
            self._vertices = vertices(self)
        return self._vertices

    def lower(self, f, tol: float = 1e-9) -> float:
        """Smallest expectation of ``f`` over the polytope; ``inf`` when empty."""
        return _extreme_expectation(self, as_gamble(f, self.n), tol)

    def upper(self, f, tol: float = 1e-9) -> float:
        return -self.lower(-as_gamble(f, self.n), tol)

    def to_dict(self, with_vertices: bool = False) -> dict:
        out = {"n": self.n, "constraints": self.constraints.tolist()}
        if with_vertices and self.n <= MAX_VERTEX_DIM:
            out["vertices"] = [v.to_dict() for v in self.vertices()]
        return out


def _simplex_rows(C: np.ndarray, n: int):
    A = np.vstack([C, np.ones((1, n))]) if C.shape[0] else np.ones((1, n))
    rel = [">="] * C.shape[0] + ["=="]
    b = np.append(np.zeros(C.shape[0]), 1.0)
    return A, rel, b


def _extreme_expectation(C: CredalPolytope, f: np.ndarray, tol: float) -> float:
    A, rel, b = _simplex_rows(C.constraints, C.n)
    res = solve(LpProblem(f, A, rel, b), tol=tol)
    if res.status is LpStatus.INFEASIBLE:
        return np.inf
    if not res.optimal:
        raise NumericalError(f"expectation LP: {res.status.value}")
    return float(res.value)


def credal_intersection(D: DesirSet) -> CredalPolytope:
    if not isinstance(D, GeneratedSet) or D.spec.kind not in (Kind.KAPPA1, Kind.KAPPA2, Kind.KAPPA3, Kind.KAPPA4):
        raise UnsupportedSpecError("credal sets are available for generated sets under the four standard closures")
    return CredalPolytope(D.generators.copy(), D.n)


def is_empty(C: CredalPolytope, tol: float = 1e-9) -> EmptinessReport:
    """Empty iff some convex combination of the constraints is uniformly
    negative; that combination is returned as the certificate. Otherwise the
    member closest to the uniform prevision in the max norm is returned."""
    G, n = C.constraints, C.n
    if G.shape[0]:
        t, lam = sure_loss_multipliers(G, tol)
        if t < -tol:
            lam = _unit_scaled(lam)
            comb = lam @ G
            return EmptinessReport(True, None, {"lambda": lam.tolist(), "combination": comb.tolist(), "sup": float(comb.max())})
    # min s  s.t.  |p_i - 1/n| <= s, p . g >= 0, sum p = 1, p >= 0
    u = 1.0 / n
    rows, rel, rhs = [], [], []
    for g in G:
        rows.append(np.append(g, 0.0)), rel.append(">="), rhs.append(0.0)
    rows.append(np.append(np.ones(n), 0.0)), rel.append("=="), rhs.append(1.0)
    for i in range(n):
        e = np.zeros(n + 1)
        e[i], e[-1] = 1.0, -1.0
        rows.append(e), rel.append("<="), rhs.append(u)
        e = e.copy()
        e[i], e[-1] = 1.0, 1.0
        rows.append(e), rel.append(">="), rhs.append(u)
    c = np.zeros(n + 1)
    c[-1] = 1.0
    res = solve(LpProblem(c, np.array(rows), rel, rhs), tol=tol)
    if res.status is LpStatus.INFEASIBLE:
        # margin LP said feasible; treat as a numerical disagreement
        raise NumericalError("credal feasibility LPs disagree")
    if not res.optimal:
        raise NumericalError(f"credal feasibility LP: {res.status.value}")
    return EmptinessReport(False, LinearPrevision(_normalize(res.x[:n])))


def vertices(C: CredalPolytope) -> list[LinearPrevision]:
    """Vertices of the polytope by double description on the cone
    ``{p >= 0, G p >= 0}``, each extreme ray scaled to unit mass."""
    n = C.n
    if n > MAX_VERTEX_DIM:
        raise DimensionError(f"vertex enumeration is limited to {MAX_VERTEX_DIM} outcomes")
    H = np.vstack([np.eye(n), C.constraints]) if C.constraints.shape[0] else np.eye(n)
    rays = [np.eye(n)[i] for i in range(n)]
    zero_tol = 1e-12
    for k in range(n, H.shape[0]):
        h = H[k]
        scale = max(1.0, float(np.abs(h).max()))
        vals = [float(h @ r) for r in rays]
        plus = [r for r, v in zip(rays, vals) if v > zero_tol * scale]
        zero = [r for r, v in zip(rays, vals) if abs(v) <= zero_tol * scale]
        minus = [(r, v) for r, v in zip(rays, vals) if v < -zero_tol * scale]
        if not minus:
            continue
        plus_v = [(r, float(h @ r)) for r in plus]
        new = []
        done = H[:k]
        for (rp, vp), (rm, vm) in itertools.product(plus_v, minus):
            both = np.nonzero((np.abs(done @ rp) <= 1e-9) & (np.abs(done @ rm) <= 1e-9))[0]
            if both.size < n - 2 or np.linalg.matrix_rank(done[both], tol=1e-9) != n - 2:
                continue
            r = vp * rm - vm * rp
            if r.sum() > zero_tol:
                new.append(r / r.sum())
        rays = plus + zero + new
        if not rays:
            break
    out: list[np.ndarray] = []
    for r in rays:
        s = r.sum()
        if s <= zero_tol:
            continue
        p = r / s
        if not C.contains(p, 1e-9):
            continue
        if all(np.abs(p - q).max() > DEDUP_TOL for q in out):
            out.append(p)
    out.sort(key=lambda p: tuple(p))
    return [LinearPrevision(_normalize(p)) for p in out]


# families of credal sets ------------------------------------------------------


@dataclass
class FamilyReport:
    lower: list
    avoids_sure_loss: ConsistencyReport
    coherent: ConsistencyReport
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "lower": [v if np.isfinite(v) else ("inf" if v > 0 else "-inf") for v in self.lower],
            "avoids_sure_loss": self.avoids_sure_loss.to_dict(),
            "coherent": self.coherent.to_dict(),
            "details": self.details,
        }


def _family(family, n=None):
    out = []
    for f, cons in family:
        f = as_gamble(f, n)
        n = f.shape[0]
        cons = cons if isinstance(cons, CredalPolytope) else CredalPolytope(as_gambles(cons, n), n)
        out.append((f, cons))
    return out


def credal_family_consistency(family, spec: ClosureSpec, eps: float = 1e-9, raise_margin: float = 1e-6) -> FamilyReport:
    """Consistency of per-gamble credal sets.

    Each entry is a gamble with the constraints of its credal set; the lower
    price is the smallest expectation over that set, and the induced set of
    desirable gambles is ``{f - price + eps}`` under ``spec``. A price fails
    coherence when the closure accepts it raised by ``raise_margin``, which
    sits well above the solver tolerance.
    """
    fam = _family(family)
    if not fam:
        raise ValueError("empty family")
    n = fam[0][0].shape[0]
    F = np.array([f for f, _ in fam])
    P = np.array([C.lower(f) for f, C in fam])
    if np.any(~np.isfinite(P)):
        i = int(np.argmax(~np.isfinite(P)))
        w = {"gamble": F[i].tolist(), "reason": "empty credal set"}
        bad = ConsistencyReport("avoids-sure-loss", False, w)
        return FamilyReport(P.tolist(), bad, ConsistencyReport("coherent", False, w))
    for f, p in zip(F, P):
        if p > f.max() + 1e-9:
            w = {"gamble": f.tolist(), "price": float(p), "sup": float(f.max())}
            bad = ConsistencyReport("avoids-sure-loss", False, w)
            return FamilyReport(P.tolist(), bad, ConsistencyReport("coherent", False, w))
    H = F - P[:, None]
    D = GeneratedSet(H + eps, spec, n)
    asl = avoids_sure_loss(D)
    apl = avoids_partial_loss(D)
    if apl.holds is False:
        coh = ConsistencyReport("coherent", False, {"partial-loss": apl.witness})
    else:
        raised = [f.tolist() for f, h in zip(F, H) if D.member(h - raise_margin).is_in]
        coh = ConsistencyReport("coherent", not raised, {"raisable": raised[:5]} if raised else None)
    return FamilyReport(P.tolist(), asl, coh, {"eps": eps, "raise_margin": raise_margin})


def marginal_subfamily(family, partition):
    """Entries whose gamble is constant on each block."""
    return [(f, C) for f, C in _family(family) if is_measurable(f, partition)]


def conditional_subfamily(family, event):
    """Entries whose gamble vanishes outside the event."""
    return [(f, C) for f, C in _family(family) if vanishes_outside(f, event)]


__all__ = [
    "LinearPrevision",
    "CredalPolytope",
    "EmptinessReport",
    "FamilyReport",
    "credal_intersection",
    "is_empty",
    "vertices",
    "credal_family_consistency",
    "marginal_subfamily",
    "conditional_subfamily",
]
