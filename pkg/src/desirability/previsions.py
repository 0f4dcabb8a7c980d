"""Lower and upper previsions induced by sets of desirable gambles.

The lower prevision of ``f`` is the supremum of prices ``mu`` such that
``f - mu`` is desirable; acceptable buying prices form a lower set, so the
supremum is found by bisection on membership. The upper prevision is the
infimum of selling prices ``mu`` with ``mu - f`` desirable. Both searches
run over ``[inf f - 1, sup f + 1]`` and are vectorised over batches of
gambles.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .consistency import ConsistencyReport, avoids_partial_loss, avoids_sure_loss, sure_loss_multipliers
from .gambles import (
    NumericalError,
    Partition,
    UnsupportedSpecError,
    as_event,
    as_gamble,
    as_gambles,
    block_minimum,
    cutoff,
    indicator,
)
from .lp import LpProblem, LpStatus, solve
from .operators import ClosureSpec, DesirSet, GeneratedSet, Kind, PriceFunctional, Verdict, kappa4

log = logging.getLogger(__name__)

TOL = 1e-9
MAX_ITER = 60
EPS_GRID = tuple(10.0 ** (-k) for k in range(1, 10))


@dataclass
class PrevisionBracket:
    """Certified bracket ``[lo, hi]`` around a price.

    ``boundary_in`` is membership at the price itself, decided at a nearby
    short rational when one lies inside the bracket.
    """

    lo: float
    hi: float
    width_tol: float
    boundary_in: Verdict = Verdict.UNKNOWN
    certified: bool = True
    lp_value: float | None = None
    functional_value: float | None = None
    boundary_at: float | None = None
    extras: dict = field(default_factory=dict)

    @property
    def value(self) -> float:
        if np.isinf(self.hi) and self.hi > 0:
            return np.inf
        if np.isinf(self.lo) and self.lo < 0:
            return -np.inf
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        out = {
            "lo": _jsonable(self.lo),
            "hi": _jsonable(self.hi),
            "value": _jsonable(self.value),
            "width_tol": self.width_tol,
            "boundary_in": str(self.boundary_in),
            "certified": self.certified,
        }
        if self.lp_value is not None:
            out["lp_value"] = _jsonable(self.lp_value)
        if self.functional_value is not None:
            out["functional_value"] = self.functional_value
        out.update(self.extras)
        return out


def _jsonable(x: float):
    if np.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _snap(lo: float, hi: float, max_den: int = 10_000) -> float | None:
    mid = 0.5 * (lo + hi)
    v = float(Fraction(mid).limit_denominator(max_den))
    return v if lo <= v <= hi else None


def _bisect(D: DesirSet, F: np.ndarray, lower: bool, tol: float, boundary: bool):
    """Vectorised price search.

    For ``lower`` the query at ``mu`` is ``F - mu`` and members lie below the
    threshold; otherwise the query is ``mu - F`` and members lie above.
    Returns a list of brackets.
    """
    k = F.shape[0]
    lo = F.min(axis=1) - 1.0
    hi = F.max(axis=1) + 1.0
    certified = np.ones(k, dtype=bool)

    def query(mu: np.ndarray, rows: np.ndarray) -> np.ndarray:
        Q = F[rows] - mu[:, None] if lower else mu[:, None] - F[rows]
        return D.member_codes(Q)

    rows = np.arange(k)
    # the far end of the search range must be on the wrong side of the threshold
    far = hi if lower else lo
    codes = query(far, rows)
    escaped = codes == 1
    certified &= codes != -1
    lo_final, hi_final = lo.copy(), hi.copy()
    if lower:
        lo_final[escaped] = hi[escaped]
        hi_final[escaped] = np.inf
    else:
        hi_final[escaped] = lo[escaped]
        lo_final[escaped] = -np.inf
    active = ~escaped & certified
    for _ in range(MAX_ITER):
        active &= (hi - lo) > tol
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        mid = 0.5 * (lo[idx] + hi[idx])
        codes = query(mid, idx)
        good = codes == 1
        unknown = codes == -1
        if lower:
            lo[idx[good]] = mid[good]
            hi[idx[~good & ~unknown]] = mid[~good & ~unknown]
        else:
            hi[idx[good]] = mid[good]
            lo[idx[~good & ~unknown]] = mid[~good & ~unknown]
        certified[idx[unknown]] = False
        active[idx[unknown]] = False
    ok = ~escaped
    lo_final[ok], hi_final[ok] = lo[ok], hi[ok]
    out = [PrevisionBracket(float(lo_final[i]), float(hi_final[i]), tol, certified=bool(certified[i])) for i in range(k)]
    if boundary:
        for i, br in enumerate(out):
            if not (np.isfinite(br.lo) and np.isfinite(br.hi)) or not br.certified:
                continue
            v = _snap(br.lo, br.hi)
            if v is None:
                continue
            q = F[i] - v if lower else v - F[i]
            br.boundary_in = D.member(q).verdict
            br.boundary_at = v
    return out


def _kappa1_lp_lower(G: np.ndarray, f: np.ndarray, tol: float) -> float:
    """max mu s.t. mu + sum lam_i g_i <= f, lam >= 0."""
    m, n = G.shape
    A = np.hstack([np.ones((n, 1)), G.T]) if m else np.ones((n, 1))
    c = np.zeros(m + 1)
    c[0] = 1.0
    bounds = [(-np.inf, np.inf)] + [(0.0, np.inf)] * m
    res = solve(LpProblem(c, A, ["<="] * n, f, bounds, maximize=True), tol=tol)
    if res.status is LpStatus.UNBOUNDED:
        return np.inf
    if not res.optimal:
        raise NumericalError(f"lower prevision LP: {res.status.value}")
    return float(res.value)


def kappa1_lp_lower(G, f, tol: float = TOL) -> float:
    f = as_gamble(f)
    return _kappa1_lp_lower(as_gambles(G, f.shape[0]), f, tol)


def _decorate(D: DesirSet, F: np.ndarray, brackets, lower: bool, tol: float):
    if isinstance(D, GeneratedSet) and D.spec.kind is Kind.KAPPA1:
        for f, br in zip(F, brackets):
            v = _kappa1_lp_lower(D.generators, f, tol) if lower else -_kappa1_lp_lower(D.generators, -f, tol)
            br.lp_value = v
            if np.isfinite(v) and np.isfinite(br.value) and not (br.lo - 1e-6 <= v <= br.hi + 1e-6):
                log.warning("bisection [%g, %g] and LP %g disagree", br.lo, br.hi, v)
    if isinstance(D, GeneratedSet) and D.spec.kind is Kind.PREVISION_INDUCED:
        Fn = D.spec.functional
        for f, br in zip(F, brackets):
            br.functional_value = float(Fn(f)) if lower else -float(Fn(-f))
    return brackets


def lower_previsions(D: DesirSet, F, tol: float = TOL, boundary: bool = True) -> list[PrevisionBracket]:
    F = as_gambles(F, D.n)
    return _decorate(D, F, _bisect(D, F, True, tol, boundary), True, tol)


def upper_previsions(D: DesirSet, F, tol: float = TOL, boundary: bool = True) -> list[PrevisionBracket]:
    F = as_gambles(F, D.n)
    return _decorate(D, F, _bisect(D, F, False, tol, boundary), False, tol)


def lower_prevision(D: DesirSet, f, tol: float = TOL) -> PrevisionBracket:
    return lower_previsions(D, [as_gamble(f, D.n)], tol)[0]


def upper_prevision(D: DesirSet, f, tol: float = TOL, cross_check: bool = True) -> PrevisionBracket:
    f = as_gamble(f, D.n)
    br = upper_previsions(D, [f], tol)[0]
    if cross_check:
        conj = lower_previsions(D, [-f], tol, boundary=False)[0]
        gap = br.value + conj.value
        br.extras["conjugacy_gap"] = _jsonable(gap) if np.isfinite(gap) else 0.0
        if np.isfinite(gap) and abs(gap) > 2 * tol:
            log.warning("conjugacy gap %.3g above tolerance", gap)
    return br


# prevision-level checks --------------------------------------------------------


@dataclass
class CheckReport:
    check: str
    holds: bool | None
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_dict(self) -> dict:
        return {"check": self.check, "holds": self.holds, "violations": self.violations[:10], "details": self.details}


def check_constant_additivity(D: DesirSet, f, shifts=(1.0,), tol: float = TOL) -> CheckReport:
    f = as_gamble(f, D.n)
    shifts = [float(c) for c in shifts]
    brs = lower_previsions(D, [f] + [f + c for c in shifts], tol, boundary=False)
    base = brs[0].value
    bad = []
    for c, br in zip(shifts, brs[1:]):
        err = br.value - base - c
        if not abs(err) <= 2 * tol:
            bad.append({"shift": c, "error": float(err)})
    return CheckReport("constant-additivity", not bad, bad, {"base": base, "shifted": [b.value for b in brs[1:]]})


def _sample_gambles(D: DesirSet, samples: int, seed: int, gambles=None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    rows = [] if gambles is None else list(as_gambles(gambles, D.n))
    if isinstance(D, GeneratedSet):
        for g in D.generators:
            rows += [g, 2.0 * g, -g]
    rows += list(rng.uniform(-3.0, 3.0, size=(samples, D.n)))
    return as_gambles(rows, D.n)


def check_P_axioms(D: DesirSet, samples: int = 100, seed: int = 0, gambles=None, tol: float = TOL) -> dict:
    """Lower bound by the infimum (P1), superadditivity (P2) and positive
    homogeneity (P3). P2 is asserted for the additive closures and P3 for the
    scale-invariant ones; elsewhere violations are only recorded."""
    F = _sample_gambles(D, samples, seed, gambles)
    k = F.shape[0]
    pairs = list(itertools.combinations(range(min(k, 12)), 2)) + [(i, i + 1) for i in range(12, k - 1)]
    sums = np.array([F[i] + F[j] for i, j in pairs])
    doubles = 2.0 * F
    allF = np.vstack([F, sums, doubles])
    vals = [b.value for b in lower_previsions(D, allF, tol, boundary=False)]
    pv, ps, pd = vals[:k], vals[k : k + len(pairs)], vals[k + len(pairs) :]
    kind = D.spec.kind if D.spec is not None else None
    p1 = [{"f": F[i].tolist(), "P": pv[i]} for i in range(k) if pv[i] < F[i].min() - tol]
    p2 = [
        {"f": F[i].tolist(), "g": F[j].tolist(), "P(f)+P(g)": pv[i] + pv[j], "P(f+g)": s}
        for (i, j), s in zip(pairs, ps)
        if np.isfinite(s) and s < pv[i] + pv[j] - 3 * tol
    ]
    p3 = [
        {"f": F[i].tolist(), "2P(f)": 2 * pv[i], "P(2f)": d}
        for i, d in enumerate(pd)
        if np.isfinite(d) and abs(d - 2 * pv[i]) > 3 * tol
    ]
    asserted = {"P1": True, "P2": kind in (Kind.KAPPA1, Kind.KAPPA2), "P3": kind in (Kind.KAPPA1, Kind.KAPPA3)}
    out = {}
    for name, viol in (("P1", p1), ("P2", p2), ("P3", p3)):
        out[name] = {"asserted": asserted[name], "violations": viol[:10], "count": len(viol), "ok": not (asserted[name] and viol)}
    return out


@dataclass
class OrderReport:
    status: str  # "Holds", "Violation" or "WitnessPair"
    gamble: list | None = None
    lower: float | None = None
    upper: float | None = None
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"status": self.status, "gamble": self.gamble, "lower": self.lower, "upper": self.upper, "witness": self.witness}


def _cancelling_pair(D: DesirSet) -> dict | None:
    """Scalings of two generators summing to a negative constant, both members."""
    if not isinstance(D, GeneratedSet) or D.generators.shape[0] == 0:
        return None
    G = D.generators
    n = D.n
    for i, j in itertools.combinations_with_replacement(range(G.shape[0]), 2):
        a, b = G[i], G[j]
        # lam1 a + lam2 b - c = 0, lam1 + lam2 = 1, minimise c
        A = np.vstack([np.column_stack([a, b, -np.ones(n)]), [1.0, 1.0, 0.0]])
        rel = ["=="] * (n + 1)
        rhs = np.append(np.zeros(n), 1.0)
        res = solve(LpProblem([0.0, 0.0, 1.0], A, rel, rhs, [(0, np.inf), (0, np.inf), (-np.inf, np.inf)]))
        if not res.optimal or res.value >= -1e-9:
            continue
        lam = res.x[:2]
        nz = lam[lam > 1e-12]
        lam = lam / nz.min()
        g1, g2 = lam[0] * a, lam[1] * b
        if D.member(g1).is_in and D.member(g2).is_in:
            total = g1 + g2
            return {"g1": g1.tolist(), "g2": g2.tolist(), "scales": lam.tolist(), "generators": [i, j], "sum": total.tolist(), "eps": float(-total.max())}
    return None


def lpr_leq_upr_check(D: DesirSet, samples: int = 200, seed: int = 0, gambles=None, tol: float = TOL) -> OrderReport:
    F = _sample_gambles(D, samples, seed, gambles)
    lows = lower_previsions(D, F, tol, boundary=False)
    ups = upper_previsions(D, F, tol, boundary=False)
    for f, lw, up in zip(F, lows, ups):
        if lw.value > up.value + 2 * tol:
            witness = _cancelling_pair(D)
            if witness is None and np.isfinite(lw.lo) and np.isfinite(up.hi):
                # f - lo and hi - f are certified members; their sum is hi - lo < 0
                g1, g2 = f - lw.lo, up.hi - f
                witness = {"g1": g1.tolist(), "g2": g2.tolist(), "sum": (g1 + g2).tolist(), "eps": float(lw.lo - up.hi)}
            return OrderReport("WitnessPair" if witness else "Violation", f.tolist(), lw.value, up.value, witness)
    return OrderReport("Holds")


def is_precise(D: DesirSet, samples: int = 10_000, seed: int = 0, tol: float = TOL, structured: bool = True) -> CheckReport:
    """Lower and upper previsions coincide on every sampled gamble, and every
    non-member ``f`` has ``eps - f`` desirable for each grid ``eps``."""
    rng = np.random.default_rng(seed)
    rows = []
    if structured:
        grid = np.array(list(itertools.product((1.0, 0.0, -1.0), repeat=D.n)))
        rows.append(grid)
    rows.append(rng.uniform(-3.0, 3.0, size=(samples, D.n)))
    F = np.vstack(rows)
    lows = lower_previsions(D, F, tol, boundary=False)
    ups = upper_previsions(D, F, tol, boundary=False)
    for f, lw, up in zip(F, lows, ups):
        if lw.value > up.value + 2 * tol:
            return CheckReport("precise", None, [{"f": f.tolist(), "lower": lw.value, "upper": up.value}], {"reason": "lower above upper"})
    for f, lw, up in zip(F, lows, ups):
        if not abs(up.value - lw.value) <= 2 * tol:
            return CheckReport("precise", False, [{"f": f.tolist(), "lower": lw.value, "upper": up.value}], {"checked": int(F.shape[0])})
    out_rows = F[D.member_codes(F) == 0]
    for eps in EPS_GRID:
        codes = D.member_codes(eps - out_rows)
        bad = np.nonzero(codes == 0)[0]
        if bad.size:
            f = out_rows[bad[0]]
            return CheckReport("precise", False, [{"f": f.tolist(), "eps": eps, "criterion": "eps - f not desirable"}])
    return CheckReport("precise", True, details={"checked": int(F.shape[0])})


def closure_equals_weak_set(D: DesirSet, samples: int = 500, seed: int = 0, tol: float = TOL, gambles=None) -> CheckReport:
    """Gambles with nonnegative lower prevision lie in the closure of D:
    ``f + eps`` is desirable for every grid ``eps``; members have
    nonnegative lower prevision."""
    F = _sample_gambles(D, samples, seed, gambles)
    vals = [b for b in lower_previsions(D, F, tol, boundary=False)]
    bad = []
    codes = D.member_codes(F)
    for f, br, c in zip(F, vals, codes):
        if br.lo >= 0.0 or (br.hi >= 0.0 and br.value >= -tol):
            shifted = D.member_codes(np.array([f + eps for eps in EPS_GRID[:6]]))
            if np.any(shifted == 0):
                bad.append({"f": f.tolist(), "P": br.value, "issue": "f + eps not desirable"})
        if c == 1 and br.value < -tol:
            bad.append({"f": f.tolist(), "P": br.value, "issue": "member with negative price"})
    return CheckReport("closure-equals-weak-set", not bad, bad, {"checked": int(F.shape[0])})


# prevision-level consistency --------------------------------------------------


def _price_function(lower) -> Callable[[np.ndarray], float]:
    if isinstance(lower, DesirSet):
        return lambda f: lower_prevision(lower, f).value
    if isinstance(lower, PriceFunctional):
        return lambda f: float(lower(f))
    return lambda f: float(lower(f))


def _assessments(lower, probes) -> tuple[np.ndarray, np.ndarray]:
    price = _price_function(lower)
    F = as_gambles(probes)
    return F, np.array([price(f) for f in F])


def lpr_avoids_sure_loss(lower, probes, spec: ClosureSpec | None = None, tol: float = TOL) -> ConsistencyReport:
    """Sure-loss check for a lower prevision on a finite probe family.

    ``lower`` is a price functional, a callable, or a set whose lower
    prevision is used.
    """
    spec = spec or kappa4()
    F, P = _assessments(lower, probes)
    H = F - P[:, None]
    kind = spec.kind
    if not np.all(np.isfinite(P)):
        i = int(np.argmax(~np.isfinite(P)))
        return ConsistencyReport("lpr-avoids-sure-loss", False, {"f": F[i].tolist(), "price": "inf"})
    if kind in (Kind.KAPPA3, Kind.KAPPA4):
        for f, p in zip(F, P):
            if p > f.max() + tol:
                return ConsistencyReport("lpr-avoids-sure-loss", False, {"f": f.tolist(), "price": float(p), "sup": float(f.max())})
        return ConsistencyReport("lpr-avoids-sure-loss", True, details={"criterion": "price at most sup"})
    if kind is Kind.KAPPA2:
        k = H.shape[0]
        subsets = itertools.chain.from_iterable(itertools.combinations(range(k), r) for r in range(1, min(k, 12) + 1))
        for sub in subsets:
            total = H[list(sub)].sum(axis=0)
            if total.max() < -tol:
                return ConsistencyReport("lpr-avoids-sure-loss", False, {"subset": list(sub), "sup": float(total.max())})
        return ConsistencyReport("lpr-avoids-sure-loss", True, details={"criterion": "finite sums"})
    if kind is Kind.KAPPA1:
        t, lam = sure_loss_multipliers(H, tol)
        if t < -tol:
            return ConsistencyReport("lpr-avoids-sure-loss", False, {"lambda": lam.tolist(), "sup": float(t)})
        return ConsistencyReport("lpr-avoids-sure-loss", True, details={"criterion": "positive combinations"})
    D = GeneratedSet(H + EPS_GRID[-1], spec, F.shape[1])
    rep = avoids_sure_loss(D)
    rep.check = "lpr-avoids-sure-loss"
    return rep


def _min_max_scaled(a: np.ndarray, b: np.ndarray) -> float:
    """inf over lam > 0 of max_w (lam a_w - b_w)."""
    cands = [1e-12, 1e6]
    for i, j in itertools.combinations(range(a.shape[0]), 2):
        if a[i] != a[j]:
            lam = (b[i] - b[j]) / (a[i] - a[j])
            if lam > 0:
                cands.append(lam)
    return min(float(np.max(lam * a - b)) for lam in cands)


def lpr_coherent(lower, probes, spec: ClosureSpec | None = None, tol: float = TOL) -> ConsistencyReport:
    """Coherence of a lower prevision on a finite probe family."""
    spec = spec or kappa4()
    asl = lpr_avoids_sure_loss(lower, probes, spec, tol)
    if asl.holds is not True:
        asl.check = "lpr-coherent"
        return asl
    F, P = _assessments(lower, probes)
    H = F - P[:, None]
    for f, p in zip(F, P):
        if p < f.min() - tol:
            return ConsistencyReport("lpr-coherent", False, {"f": f.tolist(), "price": float(p), "inf": float(f.min())})
    k = H.shape[0]
    kind = spec.kind
    for i in range(k):
        others = [j for j in range(k) if j != i]
        if kind is Kind.KAPPA4:
            for j in others:
                if (H[j] - H[i]).max() < -tol:
                    return ConsistencyReport("lpr-coherent", False, {"raised": F[i].tolist(), "by": F[j].tolist()})
        elif kind is Kind.KAPPA3:
            for j in others:
                if _min_max_scaled(H[j], H[i]) < -tol:
                    return ConsistencyReport("lpr-coherent", False, {"raised": F[i].tolist(), "by": F[j].tolist()})
        elif kind is Kind.KAPPA2:
            for r in range(1, min(len(others), 10) + 1):
                for sub in itertools.combinations(others, r):
                    if (H[list(sub)].sum(axis=0) - H[i]).max() < -tol:
                        return ConsistencyReport("lpr-coherent", False, {"raised": F[i].tolist(), "by": [F[j].tolist() for j in sub]})
        elif kind is Kind.KAPPA1 and others:
            # min t s.t. sum_j lam_j H_j - H_i <= t, lam >= 0
            Ho = H[others]
            n = H.shape[1]
            A = np.hstack([Ho.T, -np.ones((n, 1))])
            c = np.append(np.zeros(len(others)), 1.0)
            bounds = [(0.0, np.inf)] * len(others) + [(-np.inf, np.inf)]
            res = solve(LpProblem(c, A, ["<="] * n, H[i], bounds), tol=tol)
            if res.status is LpStatus.UNBOUNDED or (res.optimal and res.value < -tol):
                return ConsistencyReport("lpr-coherent", False, {"raised": F[i].tolist()})
    if kind not in (Kind.KAPPA1, Kind.KAPPA2, Kind.KAPPA3, Kind.KAPPA4):
        D = GeneratedSet(H + EPS_GRID[-1], spec, F.shape[1])
        if avoids_partial_loss(D).holds is False:
            return ConsistencyReport("lpr-coherent", False, {"partial-loss": True})
        for f, h in zip(F, H):
            if D.member(h).is_in:
                return ConsistencyReport("lpr-coherent", False, {"raised": f.tolist()})
    return ConsistencyReport("lpr-coherent", True, details={"probes": int(k)})


# conditioning -------------------------------------------------------------------


def _bisect_scalar(pred: Callable[[float], Verdict], lo: float, hi: float, tol: float) -> PrevisionBracket:
    """Threshold of a predicate that holds below and fails above."""
    certified = True
    for _ in range(MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        v = pred(mid)
        if v is Verdict.UNKNOWN:
            certified = False
            break
        if v is Verdict.IN:
            lo = mid
        else:
            hi = mid
    return PrevisionBracket(lo, hi, tol, certified=certified)


@dataclass
class GbrResult:
    gbr: PrevisionBracket
    member_sup: PrevisionBracket
    weak_sup: PrevisionBracket
    lower_of_event: PrevisionBracket
    sandwich_ok: bool | None

    def to_dict(self) -> dict:
        return {
            "gbr": self.gbr.to_dict(),
            "member_sup": self.member_sup.to_dict(),
            "weak_sup": self.weak_sup.to_dict(),
            "lower_of_event": self.lower_of_event.to_dict(),
            "sandwich_ok": self.sandwich_ok,
        }


def gbr_conditional(D: DesirSet, f, B, tol: float = TOL) -> GbrResult:
    """Three conditional prices of ``f`` given ``B``:

    * ``gbr``: sup{mu : lower prevision of B(f - mu) > 0}
    * ``member_sup``: sup{mu : B(f - mu) desirable}
    * ``weak_sup``: sup{mu : lower prevision of B(f - mu) >= 0}

    When the event has positive lower prevision these satisfy
    ``gbr <= member_sup <= weak_sup``. Otherwise ``gbr`` is the infimum of
    ``f`` on ``B``.
    """
    f = as_gamble(f, D.n)
    B = as_event(B, D.n)
    if not B.any():
        raise ValueError("conditioning on the empty event")
    lowB = lower_prevision(D, indicator(B), tol)
    a, b = float(f[B].min()) - 1.0, float(f[B].max()) + 1.0

    def inner(mu: float) -> PrevisionBracket:
        return lower_previsions(D, [cutoff(f - mu, B)], tol, boundary=False)[0]

    def strict(mu):
        br = inner(mu)
        return Verdict.IN if br.lo > 0.0 else Verdict.OUT

    def weak(mu):
        br = inner(mu)
        return Verdict.IN if br.hi >= 0.0 else Verdict.OUT

    member_sup = _bisect_scalar(lambda mu: D.member(cutoff(f - mu, B)).verdict, a, b, tol)
    weak_sup = _bisect_scalar(weak, a, b, tol)
    positive = lowB.lo > 0.0
    if positive:
        gbr = _bisect_scalar(strict, a, b, tol)
        sandwich = gbr.lo <= member_sup.hi + tol and member_sup.lo <= weak_sup.hi + tol
        if not sandwich:
            log.warning("conditional price bounds out of order")
    else:
        inf_b = float(f[B].min())
        gbr = PrevisionBracket(inf_b, inf_b, tol)
        sandwich = None
    return GbrResult(gbr, member_sup, weak_sup, lowB, sandwich)


def conditional_lower(D_block: DesirSet, f, B, tol: float = TOL) -> PrevisionBracket:
    """sup{mu : B(f - mu) is in the conditional set}."""
    f = as_gamble(f, D_block.n)
    B = as_event(B, D_block.n)
    a, b = float(f[B].min()) - 1.0, float(f[B].max()) + 1.0
    return _bisect_scalar(lambda mu: D_block.member(cutoff(f - mu, B)).verdict, a, b, tol)


def marginal_extension_prevision(
    D_marg: DesirSet, D_cond_list, partition: Partition, spec: ClosureSpec, f, tol: float = TOL, cross_check: bool = True
) -> PrevisionBracket:
    """Lower prevision of the marginal extension built from a marginal set and
    one conditional set per block.

    Dominance closure: the larger of the marginal price of the block-wise
    minimum and the smallest conditional price. Conic closure: the marginal
    price of the gamble of conditional prices.
    """
    f = as_gamble(f, D_marg.n)
    if spec.kind not in (Kind.KAPPA1, Kind.KAPPA4):
        raise UnsupportedSpecError("marginal extension prices are available for kappa1 and kappa4")
    if len(D_cond_list) != len(partition):
        raise ValueError("one conditional set per block is required")
    cond = [conditional_lower(Dc, f, blk, tol) for Dc, blk in zip(D_cond_list, partition)]
    if spec.kind is Kind.KAPPA4:
        first = lower_prevision(D_marg, block_minimum(f, partition), tol).value
        second = min(c.value for c in cond)
        value = max(first, second)
        extras = {"marginal_part": first, "conditional_part": second}
    else:
        g = np.zeros_like(f)
        for c, blk in zip(cond, partition):
            g[blk] = c.value
        value = lower_prevision(D_marg, g, tol).value
        extras = {"conditional_prices": [c.value for c in cond]}
    br = PrevisionBracket(value - tol, value + tol, 2 * tol, extras=extras)
    if cross_check:
        from .structure import ConditionalFamily, marginal_extension_set

        try:
            E = marginal_extension_set(D_marg, ConditionalFamily(partition, list(D_cond_list)), spec)
        except UnsupportedSpecError as exc:
            br.extras["membership_value"] = None
            br.extras["cross_check_skipped"] = str(exc)
        else:
            check = lower_prevision(E, f, tol)
            br.extras["membership_value"] = check.value
            br.extras["agrees"] = bool(abs(check.value - value) <= 1e-6)
    return br


__all__ = [
    "PrevisionBracket",
    "lower_prevision",
    "upper_prevision",
    "lower_previsions",
    "upper_previsions",
    "kappa1_lp_lower",
    "check_constant_additivity",
    "check_P_axioms",
    "lpr_leq_upr_check",
    "is_precise",
    "closure_equals_weak_set",
    "lpr_avoids_sure_loss",
    "lpr_coherent",
    "gbr_conditional",
    "conditional_lower",
    "marginal_extension_prevision",
    "GbrResult",
    "CheckReport",
    "OrderReport",
]
