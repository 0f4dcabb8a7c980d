"""Closure operators and membership in the sets they generate.

A :class:`ClosureSpec` names one of the built-in closure operators. A
:class:`GeneratedSet` pairs a finite generator list with a spec and answers
membership in the smallest closed set containing the generators and the
positive gambles. Answers are tri-state: the integer-sum closure may report
:attr:`Verdict.UNKNOWN` when its bounded search cannot decide.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from . import _kernels
from .gambles import (
    DimensionError,
    NumericalError,
    as_gamble,
    as_gambles,
    is_positive,
    positive_rows,
)
from .lp import LpProblem, LpStatus, solve

log = logging.getLogger(__name__)


class Kind(str, Enum):
    KAPPA1 = "kappa1"
    KAPPA2 = "kappa2"
    KAPPA3 = "kappa3"
    KAPPA4 = "kappa4"
    UTILITY_WARP = "utility-warp"
    PREVISION_INDUCED = "prevision-induced"
    NEG_LIMIT = "neg-limit"


@dataclass(frozen=True)
class UtilityFn:
    """Strictly increasing utility with ``u(0) = 0``.

    ``linear``: u(x) = x.  ``odd-power``: u(x) = sign(x) |x|**a.
    ``cara``: u(x) = (1 - exp(-a x)) / a.
    """

    kind: str = "linear"
    param: float = 1.0

    def __post_init__(self):
        if self.kind not in ("linear", "odd-power", "cara"):
            raise ValueError(f"unknown utility kind {self.kind!r}")
        if self.kind != "linear" and not (np.isfinite(self.param) and self.param > 0):
            raise ValueError("utility parameter must be positive")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "linear":
            return x.copy()
        if self.kind == "odd-power":
            out = np.sign(x) * np.abs(x) ** self.param
        else:
            with np.errstate(over="raise"):
                try:
                    out = -np.expm1(-self.param * x) / self.param
                except FloatingPointError:
                    raise OverflowError("utility overflow") from None
        if not np.all(np.isfinite(out)):
            raise OverflowError("utility overflow")
        return out

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        if self.kind == "linear":
            return y.copy()
        if self.kind == "odd-power":
            return np.sign(y) * np.abs(y) ** (1.0 / self.param)
        arg = self.param * y
        if np.any(arg >= 1.0):
            raise ValueError("value outside the range of the utility")
        return -np.log1p(-arg) / self.param

    def to_dict(self) -> dict:
        return {"kind": self.kind, "param": self.param}


@dataclass(frozen=True)
class PriceFunctional:
    """Linear expectation or ordered weighted average.

    For ``owa`` the weights apply to the values sorted in increasing order.
    """

    kind: str
    weights: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in ("linear", "owa"):
            raise ValueError(f"unknown functional kind {self.kind!r}")
        w = tuple(float(x) for x in self.weights)
        if not w or min(w) < 0 or abs(sum(w) - 1.0) > 1e-9:
            raise ValueError("weights must be nonnegative and sum to one")
        object.__setattr__(self, "weights", w)

    @classmethod
    def linear(cls, p) -> "PriceFunctional":
        return cls("linear", tuple(p))

    @classmethod
    def owa(cls, weights) -> "PriceFunctional":
        return cls("owa", tuple(weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    def __call__(self, f):
        F = np.asarray(f, dtype=float)
        if F.shape[-1] != self.n:
            raise DimensionError(f"functional expects {self.n} values")
        w = np.asarray(self.weights)
        if self.kind == "owa":
            F = np.sort(F, axis=-1)
        out = F @ w
        return float(out) if np.ndim(out) == 0 else out

    def to_dict(self) -> dict:
        key = "p" if self.kind == "linear" else "weights"
        return {"kind": self.kind, key: list(self.weights)}


@dataclass(frozen=True)
class ClosureSpec:
    kind: Kind
    max_multiplicity: int = 64
    utility: UtilityFn | None = None
    functional: PriceFunctional | None = None
    max_negative: int = 1
    lp_tol: float = 1e-9
    strict_margin: float = 1e-7

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.UTILITY_WARP and self.utility is None:
            raise ValueError("utility-warp needs a utility function")
        if self.kind is Kind.PREVISION_INDUCED and self.functional is None:
            raise ValueError("prevision-induced needs a price functional")
        if self.max_multiplicity < 1 or self.max_negative < 0:
            raise ValueError("bounds must be positive")
        if not (0 < self.lp_tol < 1e-3 and 0 < self.strict_margin < 1e-2):
            raise ValueError("tolerances out of range")

    def with_tolerances(self, lp_tol: float | None = None, strict_margin: float | None = None) -> "ClosureSpec":
        return replace(
            self,
            lp_tol=self.lp_tol if lp_tol is None else lp_tol,
            strict_margin=self.strict_margin if strict_margin is None else strict_margin,
        )

    @property
    def name(self) -> str:
        if self.kind is Kind.UTILITY_WARP:
            return f"utility-warp({self.utility.kind},{self.utility.param:g})"
        if self.kind is Kind.PREVISION_INDUCED:
            return f"prevision-induced({self.functional.kind})"
        if self.kind is Kind.NEG_LIMIT:
            return f"neg-limit({self.max_negative})"
        return self.kind.value

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.kind is Kind.KAPPA2:
            out["max_multiplicity"] = self.max_multiplicity
        if self.utility is not None:
            out["utility"] = self.utility.to_dict()
        if self.functional is not None:
            out["functional"] = self.functional.to_dict()
        if self.kind is Kind.NEG_LIMIT:
            out["max_negative"] = self.max_negative
        return out


def kappa1(**kw) -> ClosureSpec:
    return ClosureSpec(Kind.KAPPA1, **kw)


def kappa2(max_multiplicity: int = 64, **kw) -> ClosureSpec:
    return ClosureSpec(Kind.KAPPA2, max_multiplicity=max_multiplicity, **kw)


def kappa3(**kw) -> ClosureSpec:
    return ClosureSpec(Kind.KAPPA3, **kw)


def kappa4(**kw) -> ClosureSpec:
    return ClosureSpec(Kind.KAPPA4, **kw)


def utility_warp(u: UtilityFn, **kw) -> ClosureSpec:
    return ClosureSpec(Kind.UTILITY_WARP, utility=u, **kw)


def prevision_induced(F: PriceFunctional, **kw) -> ClosureSpec:
    return ClosureSpec(Kind.PREVISION_INDUCED, functional=F, **kw)


def neg_limit(k: int, **kw) -> ClosureSpec:
    return ClosureSpec(Kind.NEG_LIMIT, max_negative=k, **kw)


# membership -------------------------------------------------------------------


class Verdict(Enum):
    IN = 1
    OUT = 0
    UNKNOWN = -1

    def __str__(self) -> str:
        return self.name.capitalize()


@dataclass
class Membership:
    verdict: Verdict
    witness: dict | None = None

    @property
    def is_in(self) -> bool:
        return self.verdict is Verdict.IN

    @property
    def is_out(self) -> bool:
        return self.verdict is Verdict.OUT

    @property
    def code(self) -> int:
        return self.verdict.value


IN_CODE, OUT_CODE, UNKNOWN_CODE = 1, 0, -1
_POSITIVE = {"route": "positive"}


def _verdict(code: int) -> Verdict:
    return Verdict(int(code))


def member_kappa1(G, f, lp_tol: float = 1e-9, strict_margin: float = 1e-7) -> Membership:
    """Positive combinations of generators, plus dominance."""
    f = as_gamble(f)
    G = as_gambles(G, f.shape[0])
    if is_positive(f):
        return Membership(Verdict.IN, dict(_POSITIVE))
    m = G.shape[0]
    if m == 0:
        return Membership(Verdict.OUT)
    A = G.T
    if f.min() < -lp_tol:
        res = solve(LpProblem(np.zeros(m), A, ["<="] * f.shape[0], f), tol=lp_tol)
        if res.status is LpStatus.INFEASIBLE:
            return Membership(Verdict.OUT, {"route": "lp-infeasible"})
        if not res.optimal:
            raise NumericalError(f"kappa1 membership LP: {res.status.value} {res.detail}")
        lam = np.maximum(res.x, 0.0)
    else:
        # f >= 0 up to tolerance: a nonzero multiplier vector is required
        A2 = np.vstack([A, np.ones((1, m))])
        b2 = np.append(f, 1.0)
        res = solve(LpProblem(np.ones(m), A2, ["<="] * (f.shape[0] + 1), b2, maximize=True), tol=lp_tol)
        if res.status is LpStatus.INFEASIBLE:
            return Membership(Verdict.OUT, {"route": "lp-infeasible"})
        if not res.optimal:
            raise NumericalError(f"kappa1 membership LP: {res.status.value} {res.detail}")
        if res.value <= strict_margin:
            return Membership(Verdict.OUT, {"route": "zero-multipliers-only"})
        lam = np.maximum(res.x, 0.0)
    return Membership(Verdict.IN, {"route": "cone", "lambda": lam.tolist(), "combination": (lam @ G).tolist()})


def _max_multipliers(G: np.ndarray, f: np.ndarray, lp_tol: float):
    """Upper bounds on each multiplier over {lam >= 0, sum >= 1, G^T lam <= f}.

    Returns ``None`` when the relaxation is infeasible, otherwise a list with
    ``inf`` for unbounded coordinates.
    """
    m, n = G.shape
    A = np.vstack([G.T, np.ones((1, m))])
    rel = ["<="] * n + [">="]
    b = np.append(f, 1.0)
    bounds = []
    for i in range(m):
        c = np.zeros(m)
        c[i] = 1.0
        res = solve(LpProblem(c, A, rel, b, maximize=True), tol=lp_tol)
        if res.status is LpStatus.INFEASIBLE:
            return None
        if res.status is LpStatus.UNBOUNDED:
            bounds.append(np.inf)
        elif res.optimal:
            bounds.append(res.value)
        else:
            raise NumericalError(f"kappa2 bounding LP: {res.status.value}")
    return bounds


def member_kappa2(G, f, max_multiplicity: int = 64, lp_tol: float = 1e-9, max_nodes: int = 2_000_000) -> Membership:
    """Finite sums of generators with integer multiplicities, plus dominance.

    The real relaxation bounds every multiplicity; when all bounds fit under
    ``max_multiplicity`` the enumeration is exhaustive and a failed search
    certifies ``OUT``. Otherwise a failed search is ``UNKNOWN``.
    """
    f = as_gamble(f)
    G = as_gambles(G, f.shape[0])
    if is_positive(f):
        return Membership(Verdict.IN, dict(_POSITIVE))
    if G.shape[0] == 0:
        return Membership(Verdict.OUT)
    # cheap witnesses first: small multiplicities need no bounding LPs
    if G.shape[0] <= 8:
        quick = np.full(G.shape[0], min(2, max_multiplicity), dtype=np.int64)
        status, n, _ = _kernels.integer_search(G, f, quick, 10_000)
        if status == _kernels.FOUND:
            n = np.asarray(n)
            return Membership(Verdict.IN, {"route": "integer-sum", "multiplicities": n.tolist(), "combination": (n @ G).tolist()})
    maxes = _max_multipliers(G, f, lp_tol)
    if maxes is None:
        return Membership(Verdict.OUT, {"route": "relaxation-infeasible"})
    complete = True
    upper = np.zeros(G.shape[0], dtype=np.int64)
    for i, v in enumerate(maxes):
        if not np.isfinite(v) or v + 1e-9 > max_multiplicity + 1:
            complete = False
            upper[i] = max_multiplicity
        else:
            upper[i] = max(0, int(np.floor(v + 1e-9)))
    status, n, nodes = _kernels.integer_search(G, f, upper, max_nodes)
    if status == _kernels.FOUND:
        n = np.asarray(n)
        return Membership(Verdict.IN, {"route": "integer-sum", "multiplicities": n.tolist(), "combination": (n @ G).tolist()})
    if status == _kernels.EXHAUSTED and complete:
        return Membership(Verdict.OUT, {"route": "exhaustive", "nodes": int(nodes)})
    return Membership(Verdict.UNKNOWN, {"route": "search-bound", "nodes": int(nodes), "upper": upper.tolist()})


def member_kappa3(G, f) -> Membership:
    """Positive scalings of a single generator, plus dominance."""
    f = as_gamble(f)
    G = as_gambles(G, f.shape[0])
    if is_positive(f):
        return Membership(Verdict.IN, dict(_POSITIVE))
    idx, lam = _kernels.scaling_scan(G, f[None, :].copy())
    if idx[0] < 0:
        return Membership(Verdict.OUT)
    return Membership(Verdict.IN, {"route": "scaled-generator", "generator": int(idx[0]), "lambda": float(lam[0])})


def member_kappa4(G, f) -> Membership:
    """Dominance of a single generator."""
    f = as_gamble(f)
    G = as_gambles(G, f.shape[0])
    if is_positive(f):
        return Membership(Verdict.IN, dict(_POSITIVE))
    idx = _kernels.dominance_scan(G, f[None, :].copy())
    if idx[0] < 0:
        return Membership(Verdict.OUT)
    return Membership(Verdict.IN, {"route": "dominates-generator", "generator": int(idx[0])})


def member_utility_warp(u: UtilityFn, G, f, lp_tol: float = 1e-9, strict_margin: float = 1e-7) -> Membership:
    """Conic closure taken after mapping every gamble through ``u``."""
    f = as_gamble(f)
    G = as_gambles(G, f.shape[0])
    res = member_kappa1(u(G) if G.shape[0] else G, u(f), lp_tol, strict_margin)
    if res.witness and "combination" in res.witness:
        res.witness["warped_combination"] = res.witness.pop("combination")
    return res


def member_prevision_induced(F: PriceFunctional, f, G=None) -> Membership:
    """Positive gambles, gambles with positive price, and anything dominating
    an extra generator."""
    f = as_gamble(f, F.n)
    if is_positive(f):
        return Membership(Verdict.IN, dict(_POSITIVE))
    price = F(f)
    if price > 0.0:
        return Membership(Verdict.IN, {"route": "positive-price", "price": price})
    if G is not None and len(G):
        hit = member_kappa4(G, f)
        if hit.is_in:
            return hit
    return Membership(Verdict.OUT, {"price": price})


def _too_negative(G: np.ndarray, k: int) -> np.ndarray:
    return (G < 0.0).sum(axis=1) > k


def member_neg_limit(k: int, G, f) -> Membership:
    """Dominance closure unless a generator has more than ``k`` strictly
    negative coordinates, in which case every gamble is a member."""
    f = as_gamble(f)
    G = as_gambles(G, f.shape[0])
    bad = np.nonzero(_too_negative(G, k))[0] if G.shape[0] else []
    if len(bad):
        return Membership(Verdict.IN, {"route": "collapse", "generator": int(bad[0])})
    return member_kappa4(G, f)


# sets -------------------------------------------------------------------------


class DesirSet:
    """A set of gambles on ``n`` outcomes, queried through :meth:`member`.

    ``spec`` is the closure the set is meant to be closed under; subclasses
    override :meth:`member` and optionally :meth:`member_codes`.
    """

    n: int
    spec: ClosureSpec | None = None

    def member(self, f) -> Membership:  # pragma: no cover - abstract
        raise NotImplementedError

    def member_codes(self, F) -> np.ndarray:
        """Vectorised membership codes (1 in, 0 out, -1 unknown)."""
        F = as_gambles(F, self.n)
        return np.array([self.member(f).code for f in F], dtype=np.int8)

    def contains(self, f) -> bool:
        return self.member(f).is_in

    def describe(self) -> dict:
        return {"type": type(self).__name__}


class GeneratedSet(DesirSet):
    """Smallest set closed under ``spec`` containing the generators and the
    positive gambles. An empty generator list gives the vacuous set."""

    def __init__(self, generators, spec: ClosureSpec, n: int | None = None):
        if n is None:
            if spec.functional is not None:
                n = spec.functional.n
            elif isinstance(generators, np.ndarray) and generators.ndim == 2:
                n = generators.shape[1]
            elif len(generators):
                n = len(generators[0])
            else:
                raise DimensionError("cannot infer the space size from an empty generator list")
        self.n = int(n)
        self.generators = as_gambles(generators, self.n)
        self.spec = spec
        if spec.functional is not None and spec.functional.n != self.n:
            raise DimensionError("functional and generators live on different spaces")

    def __repr__(self) -> str:
        return f"GeneratedSet({self.generators.tolist()}, {self.spec.name})"

    def with_generators(self, generators) -> "GeneratedSet":
        return GeneratedSet(generators, self.spec, self.n)

    def member(self, f) -> Membership:
        f = as_gamble(f, self.n)
        s, G = self.spec, self.generators
        if s.kind is Kind.KAPPA1:
            return member_kappa1(G, f, s.lp_tol, s.strict_margin)
        if s.kind is Kind.KAPPA2:
            return member_kappa2(G, f, s.max_multiplicity, s.lp_tol)
        if s.kind is Kind.KAPPA3:
            return member_kappa3(G, f)
        if s.kind is Kind.KAPPA4:
            return member_kappa4(G, f)
        if s.kind is Kind.UTILITY_WARP:
            return member_utility_warp(s.utility, G, f, s.lp_tol, s.strict_margin)
        if s.kind is Kind.PREVISION_INDUCED:
            return member_prevision_induced(s.functional, f, G)
        return member_neg_limit(s.max_negative, G, f)

    def member_codes(self, F) -> np.ndarray:
        F = as_gambles(F, self.n)
        kind, G = self.spec.kind, self.generators
        codes = np.zeros(F.shape[0], dtype=np.int8)
        pos = positive_rows(F)
        codes[pos] = IN_CODE
        if kind is Kind.NEG_LIMIT and G.shape[0] and _too_negative(G, self.spec.max_negative).any():
            codes[:] = IN_CODE
            return codes
        if kind in (Kind.KAPPA4, Kind.NEG_LIMIT, Kind.PREVISION_INDUCED):
            if G.shape[0]:
                codes[_kernels.dominance_scan(G, F) >= 0] = IN_CODE
            if kind is Kind.PREVISION_INDUCED:
                codes[np.asarray(self.spec.functional(F)) > 0.0] = IN_CODE
            return codes
        if kind is Kind.KAPPA3:
            if G.shape[0]:
                idx, _ = _kernels.scaling_scan(G, F)
                codes[idx >= 0] = IN_CODE
            return codes
        if kind in (Kind.KAPPA1, Kind.UTILITY_WARP) and G.shape[0]:
            # a scaled generator below f settles membership without an LP; rows
            # near the nonnegative orthant are left to the LP and its margin
            H, Q = (G, F) if kind is Kind.KAPPA1 else (self.spec.utility(G), self.spec.utility(F))
            rows = np.nonzero(~pos & (Q.min(axis=1) < -self.spec.lp_tol))[0]
            if rows.size:
                idx, _ = _kernels.scaling_scan(np.ascontiguousarray(H), np.ascontiguousarray(Q[rows]))
                codes[rows[idx >= 0]] = IN_CODE
        for i in np.nonzero(codes == 0)[0]:
            codes[i] = self.member(F[i]).code
        return codes

    def describe(self) -> dict:
        return {"type": "generated", "spec": self.spec.to_dict(), "generators": self.generators.tolist()}


class FiniteSet(DesirSet):
    """The listed gambles together with the positive gambles, with no closure
    applied. Useful as a deliberately non-closed reference."""

    def __init__(self, gambles, n: int | None = None, spec: ClosureSpec | None = None):
        G = as_gambles(gambles, n)
        self.n = G.shape[1] if n is None else n
        self.gambles = G
        self.spec = spec

    def member(self, f) -> Membership:
        f = as_gamble(f, self.n)
        if is_positive(f):
            return Membership(Verdict.IN, dict(_POSITIVE))
        for i, g in enumerate(self.gambles):
            if np.array_equal(g, f):
                return Membership(Verdict.IN, {"route": "listed", "index": i})
        return Membership(Verdict.OUT)

    def describe(self) -> dict:
        return {"type": "finite", "gambles": self.gambles.tolist()}


def member(D: DesirSet, f) -> Membership:
    return D.member(as_gamble(f, D.n))


def extension(generators, spec: ClosureSpec, n: int | None = None) -> GeneratedSet:
    return GeneratedSet(generators, spec, n)


# probes -----------------------------------------------------------------------


def _random_generators(rng, n: int, m: int, spec: ClosureSpec) -> np.ndarray:
    G = rng.uniform(-2.0, 2.0, size=(m, n))
    if spec.kind is Kind.KAPPA2:
        G = np.round(G * 2.0) / 2.0
    return G


def _random_spec_instance(rng, spec: ClosureSpec) -> tuple[int, np.ndarray]:
    n = spec.functional.n if spec.functional is not None else int(rng.integers(2, 4))
    m = int(rng.integers(1, 4))
    return n, _random_generators(rng, n, m, spec)


def _probe_gambles(rng, G: np.ndarray, k: int) -> np.ndarray:
    n = G.shape[1]
    out = [rng.uniform(-3.0, 3.0, size=n) for _ in range(k // 2)]
    for _ in range(k - len(out)):
        g = G[rng.integers(G.shape[0])]
        out.append(g * rng.uniform(0.3, 2.5) + rng.normal(0.0, 0.4, size=n))
    return np.asarray(out)


def _candidate_members(G: np.ndarray, spec: ClosureSpec) -> list[np.ndarray]:
    """Gambles expected to belong to the generated set, verified by caller."""
    out = []
    for g in G:
        out.append(g + 0.5)
        out.append(2.0 * g)
        out.append(0.5 * g)
    for a, b in itertools.combinations(G, 2):
        out.append(a + b)
    return out


@dataclass
class AxiomReport:
    spec: str
    trials: int
    checked: dict = field(default_factory=dict)
    violations: dict = field(default_factory=dict)
    unknown: int = 0

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "trials": self.trials,
            "checked": self.checked,
            "violations": {k: v[:5] for k, v in self.violations.items()},
            "unknown": self.unknown,
            "ok": self.ok,
        }


def axiom_probe(spec: ClosureSpec, trials: int = 200, seed: int = 0, samples: int = 8) -> AxiomReport:
    """Randomised check that the closure contains its generators, is
    monotone, idempotent and closed under dominance."""
    rng = np.random.default_rng(seed)
    rep = AxiomReport(spec.name, trials)
    for ax in ("C1", "C2", "C3", "C4"):
        rep.checked[ax] = 0
        rep.violations[ax] = []

    def note(ax: str, ok: bool | None, info: dict):
        if ok is None:
            rep.unknown += 1
            return
        rep.checked[ax] += 1
        if not ok:
            rep.violations[ax].append(info)

    for _ in range(trials):
        n, G = _random_spec_instance(rng, spec)
        D = GeneratedSet(G, spec, n)
        for g in G:
            v = D.member(g).verdict
            note("C1", None if v is Verdict.UNKNOWN else v is Verdict.IN, {"G": G.tolist(), "g": g.tolist()})
        bigger = D.with_generators(np.vstack([G, _random_generators(rng, n, 1, spec)]))
        probes = _probe_gambles(rng, G, samples)
        base = [D.member(f).verdict for f in probes]
        for f, v in zip(probes, base):
            if v is Verdict.IN:
                w = bigger.member(f).verdict
                note("C2", None if w is Verdict.UNKNOWN else w is Verdict.IN, {"G": G.tolist(), "f": f.tolist()})
        extra = next((h for h in _candidate_members(G, spec) if D.member(h).is_in), None)
        if extra is not None:
            closed = D.with_generators(np.vstack([G, extra]))
            for f, v in zip(probes, base):
                w = closed.member(f).verdict
                if Verdict.UNKNOWN in (v, w):
                    note("C3", None, {})
                else:
                    note("C3", v is w, {"G": G.tolist(), "added": extra.tolist(), "f": f.tolist()})
        for f, v in zip(probes, base):
            if v is Verdict.IN:
                up = f + np.abs(rng.normal(0.0, 0.5, size=n)) * (rng.random(n) < 0.7)
                up[rng.integers(n)] += 0.1
                w = D.member(up).verdict
                note("C4", None if w is Verdict.UNKNOWN else w is Verdict.IN, {"G": G.tolist(), "f": up.tolist()})
    return rep


@dataclass
class EquivalenceReport:
    status: str  # "Distinguished" or "ConsistentSoFar"
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness}


def _closure_violation(S: DesirSet, members: np.ndarray, other: ClosureSpec, rng) -> dict | None:
    """Look for a gamble in the ``other``-closure of known members of S that S
    itself rejects."""
    if members.shape[0] == 0:
        return None
    H = GeneratedSet(members, other, S.n)
    cands = list(_candidate_members(members, other))
    for g in members:
        for lam in (0.25, 0.5, 0.75, 1.5, 3.0):
            cands.append(lam * g)
    for _ in range(20):
        i, j = rng.integers(members.shape[0], size=2)
        cands.append(rng.uniform(0.1, 2.0) * members[i] + rng.uniform(0.1, 2.0) * members[j])
    for c in cands:
        if H.member(c).is_in and S.member(c).is_out:
            return {"members": members.tolist(), "gamble": c.tolist(), "closure": other.name}
    return None


def _known_members(S: DesirSet, rng, k: int = 6) -> np.ndarray:
    if isinstance(S, GeneratedSet) and S.generators.shape[0]:
        return S.generators
    grid = np.array(list(itertools.product((-1.0, -0.5, 0.5, 1.0, 2.0), repeat=S.n)))
    codes = S.member_codes(grid)
    ins = grid[(codes == IN_CODE) & ~positive_rows(grid)]
    if ins.shape[0] > k:
        ins = ins[rng.choice(ins.shape[0], size=k, replace=False)]
    return ins


def equivalence_probe(
    spec_a: ClosureSpec, spec_b: ClosureSpec, trials: int = 200, seed: int = 0, seed_sets=()
) -> EquivalenceReport:
    """Search for a set that is closed under one closure and avoids partial
    loss, yet is not closed under the other. Such a set shows that the two
    closures have different families of coherent sets."""
    rng = np.random.default_rng(seed)
    pairs = ((spec_a, spec_b), (spec_b, spec_a))
    zero_out = lambda S: S.member(np.zeros(S.n)).is_out  # noqa: E731
    for S in seed_sets:
        members = _known_members(S, rng)
        if not zero_out(S):
            continue
        for one, other in pairs:
            if _closure_violation(S, members, one, rng) is None:
                hit = _closure_violation(S, members, other, rng)
                if hit is not None:
                    hit.update({"set": S.describe(), "closed_under": one.name})
                    return EquivalenceReport("Distinguished", hit)
    for _ in range(trials):
        for one, other in pairs:
            n, G = _random_spec_instance(rng, one)
            S = GeneratedSet(G, one, n)
            if not zero_out(S):
                continue
            hit = _closure_violation(S, G, other, rng)
            if hit is not None:
                hit.update({"set": S.describe(), "closed_under": one.name})
                return EquivalenceReport("Distinguished", hit)
    return EquivalenceReport("ConsistentSoFar")
