"""Choosing among finitely many options with a set of desirable gambles.

Price-set criteria compare buying prices (lower previsions) and selling
prices (upper previsions). When two prices agree within tolerance, the
comparison falls back on whether each price itself is acceptable, which
lower previsions alone cannot express.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .catalog import allais_functional
from .credal import CredalPolytope
from .gambles import UnsupportedSpecError, as_gambles, classify
from .lp import LpProblem, LpStatus, solve
from .operators import DesirSet, GeneratedSet, Kind, Verdict, prevision_induced
from .previsions import PrevisionBracket, kappa1_lp_lower, lower_previsions, upper_previsions

TOL = 1e-9


@dataclass
class DecisionReport:
    criterion: str
    optimal: list[int]
    rejected: list[dict] = field(default_factory=list)
    ties_resolved_by_boundary: bool = False
    available: bool = True
    unresolved: list[dict] = field(default_factory=list)
    prices: dict = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict:
        out = {
            "criterion": self.criterion,
            "available": self.available,
            "optimal": self.optimal,
            "rejected": self.rejected,
            "ties_resolved_by_boundary": self.ties_resolved_by_boundary,
        }
        if self.unresolved:
            out["unresolved"] = self.unresolved
        if self.prices:
            out["prices"] = self.prices
        if self.reason:
            out["reason"] = self.reason
        return out


def _unavailable(criterion: str, k: int, reason: str) -> DecisionReport:
    return DecisionReport(criterion, list(range(k)), available=False, reason=reason)


def _settle(criterion: str, k: int, verdict: Callable[[int, int], tuple]) -> DecisionReport:
    """Reject ``f`` when some ``g`` beats it; ``verdict(f, g)`` returns
    ``(beats, detail, tie_used)`` with ``beats`` None when undecided."""
    report = DecisionReport(criterion, [])
    for i in range(k):
        by = None
        for j in range(k):
            if i == j:
                continue
            beats, detail, tie = verdict(i, j)
            if beats is None:
                report.unresolved.append({"option": i, "against": j, **detail})
            elif beats:
                by = (j, detail)
                report.ties_resolved_by_boundary |= tie
                break
        if by is None:
            report.optimal.append(i)
        else:
            report.rejected.append({"option": i, "by": by[0], **by[1]})
    return report


def _compare(a: PrevisionBracket, b: PrevisionBracket, tol: float):
    """+1 when a is clearly above b, -1 when clearly below, 0 for a tie and
    None when either bracket is uncertified."""
    if not (a.certified and b.certified):
        return None
    diff = a.value - b.value
    if np.isinf(a.value) or np.isinf(b.value):
        return 0 if a.value == b.value else (1 if diff > 0 else -1)
    if diff > tol:
        return 1
    if diff < -tol:
        return -1
    return 0


def _same_point(a: PrevisionBracket, b: PrevisionBracket) -> bool:
    return a.boundary_at is not None and a.boundary_at == b.boundary_at


def _brackets(D: DesirSet, J: np.ndarray, tol: float):
    return lower_previsions(D, J, tol), upper_previsions(D, J, tol)


def _price_table(lows, ups) -> dict:
    return {"lower": [b.value for b in lows], "upper": [b.value for b in ups]}


def gamma_maximin(D: DesirSet, J, tol: float = TOL) -> DecisionReport:
    """Reject f when some buying price of g is not a buying price of f."""
    J = as_gambles(J, D.n)
    lows, ups = _brackets(D, J, tol)

    def verdict(i, j):
        f, g = lows[i], lows[j]
        c = _compare(g, f, tol)
        if c is None:
            return None, {"reason": "uncertified price"}, False
        if c:
            return c > 0, {"price": g.value, "own": f.value}, False
        if _same_point(f, g) and Verdict.UNKNOWN not in (f.boundary_in, g.boundary_in):
            wins = g.boundary_in is Verdict.IN and f.boundary_in is Verdict.OUT
            return wins, {"price": g.value, "boundary": True}, wins
        return False, {}, False

    rep = _settle("gamma-maximin", J.shape[0], verdict)
    rep.prices = _price_table(lows, ups)
    return rep


def gamma_maximax(D: DesirSet, J, tol: float = TOL) -> DecisionReport:
    """Reject f when some selling price of f is not a selling price of g."""
    J = as_gambles(J, D.n)
    lows, ups = _brackets(D, J, tol)

    def verdict(i, j):
        f, g = ups[i], ups[j]
        c = _compare(g, f, tol)
        if c is None:
            return None, {"reason": "uncertified price"}, False
        if c:
            return c > 0, {"price": g.value, "own": f.value}, False
        if _same_point(f, g) and Verdict.UNKNOWN not in (f.boundary_in, g.boundary_in):
            wins = f.boundary_in is Verdict.IN and g.boundary_in is Verdict.OUT
            return wins, {"price": g.value, "boundary": True}, wins
        return False, {}, False

    rep = _settle("gamma-maximax", J.shape[0], verdict)
    rep.prices = _price_table(lows, ups)
    return rep


def interval_dominance(D: DesirSet, J, tol: float = TOL) -> DecisionReport:
    """Reject f when some selling price of f is a buying price of g."""
    J = as_gambles(J, D.n)
    lows, ups = _brackets(D, J, tol)

    def verdict(i, j):
        f_up, g_low = ups[i], lows[j]
        c = _compare(g_low, f_up, tol)
        if c is None:
            return None, {"reason": "uncertified price"}, False
        if c:
            return c > 0, {"buying": g_low.value, "selling": f_up.value}, False
        if _same_point(f_up, g_low):
            wins = f_up.boundary_in is Verdict.IN and g_low.boundary_in is Verdict.IN
            return wins, {"buying": g_low.value, "boundary": True}, wins
        return False, {}, False

    rep = _settle("interval-dominance", J.shape[0], verdict)
    rep.prices = _price_table(lows, ups)
    return rep


def _kappa1_generators(G, n: int | None) -> np.ndarray:
    if isinstance(G, GeneratedSet):
        if G.spec.kind is not Kind.KAPPA1:
            raise UnsupportedSpecError("this criterion needs a conic (kappa1) set")
        return G.generators
    return as_gambles(G, n)


def maximality_kappa1(G, J, tol: float = TOL) -> DecisionReport:
    """f is maximal when no g has a positive lower price for g - f."""
    J = as_gambles(J)
    G = _kappa1_generators(G, J.shape[1])

    def verdict(i, j):
        v = kappa1_lp_lower(G, J[j] - J[i], tol)
        return v > tol, {"lower_of_difference": v}, False

    return _settle("maximality", J.shape[0], verdict)


def e_admissible_kappa1(G, J, tol: float = TOL) -> DecisionReport:
    """f is E-admissible when some compatible linear prevision ranks it first."""
    J = as_gambles(J)
    n = J.shape[1]
    G = _kappa1_generators(G, n)
    C = CredalPolytope(G, n)
    if C.is_empty(tol).empty:
        return _unavailable("e-admissibility", J.shape[0], "empty credal set")
    rep = DecisionReport("e-admissibility", [])
    for i in range(J.shape[0]):
        rows = np.vstack([G, J[i] - J, np.ones((1, n))]) if G.shape[0] else np.vstack([J[i] - J, np.ones((1, n))])
        rel = [">="] * (rows.shape[0] - 1) + ["=="]
        rhs = np.append(np.zeros(rows.shape[0] - 1), 1.0)
        res = solve(LpProblem(np.zeros(n), rows, rel, rhs), tol=tol)
        if res.optimal:
            rep.optimal.append(i)
            rep.prices.setdefault("witness", {})[i] = res.x.tolist()
        elif res.status is LpStatus.INFEASIBLE:
            rep.rejected.append({"option": i, "by": None, "reason": "no compatible prevision ranks it first"})
        else:
            rep.unresolved.append({"option": i, "reason": res.status.value})
            rep.optimal.append(i)
    return rep


def _maximin_beats(Dstar: DesirSet, f, g, tol: float) -> bool | None:
    lows = lower_previsions(Dstar, np.vstack([f, g]), tol)
    c = _compare(lows[1], lows[0], tol)
    if c is None:
        return None
    if c:
        return c > 0
    if _same_point(lows[0], lows[1]):
        return lows[1].boundary_in is Verdict.IN and lows[0].boundary_in is Verdict.OUT
    return False


def generic_maximality(D: DesirSet, J, enumerator: Iterable[DesirSet] | None = None, tol: float = TOL) -> DecisionReport:
    """f is maximal unless some g beats it on buying prices in every
    supplied decisive superset of D."""
    J = as_gambles(J, D.n)
    if enumerator is None:
        return _unavailable("maximality", J.shape[0], "no decisive supersets supplied")
    supersets = list(enumerator)
    if not supersets:
        return _unavailable("maximality", J.shape[0], "empty family of decisive supersets")

    def verdict(i, j):
        outcomes = [_maximin_beats(Ds, J[i], J[j], tol) for Ds in supersets]
        if any(o is False for o in outcomes):
            return False, {}, False
        if any(o is None for o in outcomes):
            return None, {"reason": "uncertified price"}, False
        return True, {"supersets": len(supersets)}, False

    return _settle("maximality", J.shape[0], verdict)


def generic_e_admissibility(D: DesirSet, J, enumerator: Iterable[DesirSet] | None = None, tol: float = TOL) -> DecisionReport:
    """f is admissible when some supplied decisive superset ranks it
    undominated on buying prices."""
    J = as_gambles(J, D.n)
    if enumerator is None:
        return _unavailable("e-admissibility", J.shape[0], "no decisive supersets supplied")
    supersets = list(enumerator)
    if not supersets:
        return _unavailable("e-admissibility", J.shape[0], "empty family of decisive supersets")
    rep = DecisionReport("e-admissibility", [])
    for i in range(J.shape[0]):
        chosen = None
        for s, Ds in enumerate(supersets):
            if not any(_maximin_beats(Ds, J[i], J[j], tol) for j in range(J.shape[0]) if j != i):
                chosen = s
                break
        if chosen is None:
            rep.rejected.append({"option": i, "by": None, "reason": "dominated in every superset"})
        else:
            rep.optimal.append(i)
            rep.prices.setdefault("superset", {})[i] = chosen
    return rep


CRITERIA = {
    "gamma-maximin": gamma_maximin,
    "gamma-maximax": gamma_maximax,
    "interval-dominance": interval_dominance,
    "maximality": maximality_kappa1,
    "e-admissibility": e_admissible_kappa1,
}


def decide(D: DesirSet, J, criterion: str, tol: float = TOL, enumerator=None) -> DecisionReport:
    """Dispatch by criterion name. Maximality and E-admissibility use the
    linear-programming forms for conic sets and otherwise need supplied
    decisive supersets."""
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}; choose from {sorted(CRITERIA)}")
    if criterion in ("maximality", "e-admissibility"):
        conic = isinstance(D, GeneratedSet) and D.spec.kind is Kind.KAPPA1
        if conic and enumerator is None:
            return CRITERIA[criterion](D, J, tol)
        fn = generic_maximality if criterion == "maximality" else generic_e_admissibility
        return fn(D, J, enumerator, tol)
    return CRITERIA[criterion](D, J, tol)


# the Allais choices -----------------------------------------------------------

ALLAIS_OPTIONS = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, 0.0, 1.9],
        [0.0, 1.0, 1.0],
        [0.0, 0.0, 1.9],
    ]
)


def allais_demo(tol: float = TOL) -> dict:
    """Prices of the four Allais options under the ordered weighted average
    0.4 min + 0.2 median + 0.4 max, the two observed preferences, and the
    constant loss any additive closure would be forced to accept."""
    F = allais_functional()
    D = GeneratedSet(np.zeros((0, 3)), prevision_induced(F), 3)
    lows = lower_previsions(D, ALLAIS_OPTIONS, tol)
    ups = upper_previsions(D, ALLAIS_OPTIONS, tol)
    exp1 = gamma_maximin(D, ALLAIS_OPTIONS[[0, 1]], tol)
    exp2 = gamma_maximin(D, ALLAIS_OPTIONS[[2, 3]], tol)
    prefers_f1 = exp1.optimal == [0]
    prefers_f4 = exp2.optimal == [1]

    eps, mu1, mu2 = Fraction(1, 100), Fraction(96, 100), Fraction(7, 10)
    f = [[Fraction(str(x)) for x in row] for row in ALLAIS_OPTIONS]
    total = [(eps - f[1][w] + mu1) + (eps - f[2][w] + mu2) + (f[3][w] - mu2) for w in range(3)]
    constant = total[0] if all(t == total[0] for t in total) else None
    klass = classify(np.array([float(t) for t in total]))
    return {
        "functional": F.to_dict(),
        "options": ALLAIS_OPTIONS.tolist(),
        "prices": [float(F(x)) for x in ALLAIS_OPTIONS],
        "lower": [b.value for b in lows],
        "upper": [b.value for b in ups],
        "preferences": {"f1 over f2": prefers_f1, "f4 over f3": prefers_f4},
        "experiment_1": exp1.to_dict(),
        "experiment_2": exp2.to_dict(),
        "impossibility": {
            "eps": float(eps),
            "mu1": float(mu1),
            "mu2": float(mu2),
            "sum": [str(t) for t in total],
            "constant": None if constant is None else float(constant),
            "expected_constant": float(2 * eps + mu1 - 1),
            "class": klass.value,
        },
    }


__all__ = [
    "DecisionReport",
    "gamma_maximin",
    "gamma_maximax",
    "interval_dominance",
    "maximality_kappa1",
    "e_admissible_kappa1",
    "generic_maximality",
    "generic_e_admissibility",
    "decide",
    "CRITERIA",
    "allais_demo",
    "ALLAIS_OPTIONS",
]
