"""Partial loss, sure loss, coherence and decisiveness checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .gambles import NumericalError
from .lp import LpProblem, solve
from .operators import (
    DesirSet,
    GeneratedSet,
    Kind,
    Verdict,
    _closure_violation,
    _known_members,
)

EPS_GRID = tuple(10.0 ** (-k) for k in range(1, 10))


@dataclass
class ConsistencyReport:
    check: str
    holds: bool | None
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.holds)

    def to_dict(self) -> dict:
        return {"check": self.check, "holds": self.holds, "witness": self.witness, "details": self.details}


def _unit_scaled(lam: np.ndarray) -> np.ndarray:
    """Rescale so the smallest nonzero multiplier is one."""
    nz = lam[lam > 1e-12]
    return lam / nz.min() if nz.size else lam


def avoids_partial_loss(D: DesirSet) -> ConsistencyReport:
    """Holds iff the zero gamble is not a member.

    Every built-in closure is closed under dominance, so any non-positive
    member would put zero in the set as well.
    """
    m = D.member(np.zeros(D.n))
    if m.verdict is Verdict.UNKNOWN:
        return ConsistencyReport("avoids-partial-loss", None, m.witness)
    if m.is_in:
        return ConsistencyReport("avoids-partial-loss", False, m.witness)
    return ConsistencyReport("avoids-partial-loss", True)


def sure_loss_multipliers(G: np.ndarray, tol: float = 1e-9):
    """Solve ``min t`` s.t. ``sum lam_i g_i <= t``, ``sum lam = 1``, ``lam >= 0``.

    Returns ``(t, lam)``; ``t < 0`` means a positive combination of the
    generators is uniformly negative.
    """
    m, n = G.shape
    A = np.hstack([G.T, -np.ones((n, 1))])
    A = np.vstack([A, np.append(np.ones(m), 0.0)])
    rel = ["<="] * n + ["=="]
    b = np.append(np.zeros(n), 1.0)
    c = np.append(np.zeros(m), 1.0)
    bounds = [(0.0, np.inf)] * m + [(-np.inf, np.inf)]
    res = solve(LpProblem(c, A, rel, b, bounds), tol=tol)
    if not res.optimal:
        raise NumericalError(f"sure-loss LP: {res.status.value}")
    return res.value, np.maximum(res.x[:m], 0.0)


def avoids_sure_loss(D: DesirSet, eps_grid=EPS_GRID) -> ConsistencyReport:
    """No member with a negative supremum.

    Decided exactly for conic and price-induced sets; other sets are probed
    with the constant gambles ``-eps`` over ``eps_grid``.
    """
    spec = getattr(D, "spec", None)
    if isinstance(D, GeneratedSet) and spec.kind is Kind.KAPPA1:
        if D.generators.shape[0] == 0:
            return ConsistencyReport("avoids-sure-loss", True, details={"route": "exact"})
        t, lam = sure_loss_multipliers(D.generators, spec.lp_tol)
        if t < -spec.lp_tol:
            lam = _unit_scaled(lam)
            comb = lam @ D.generators
            return ConsistencyReport(
                "avoids-sure-loss",
                False,
                {"lambda": lam.tolist(), "combination": comb.tolist(), "sup": float(comb.max())},
                {"route": "exact"},
            )
        return ConsistencyReport("avoids-sure-loss", True, details={"route": "exact", "margin": t})
    if isinstance(D, GeneratedSet) and spec.kind is Kind.PREVISION_INDUCED:
        G = D.generators
        bad = np.nonzero(G.max(axis=1) < 0.0)[0] if G.shape[0] else []
        if len(bad):
            return ConsistencyReport("avoids-sure-loss", False, {"generator": G[bad[0]].tolist()}, {"route": "exact"})
        tiny = -np.full(D.n, EPS_GRID[-1])
        price = spec.functional(tiny)
        return ConsistencyReport(
            "avoids-sure-loss", not price > 0.0, None if price <= 0 else {"gamble": tiny.tolist()}, {"route": "exact"}
        )
    unknown = False
    for eps in eps_grid:
        f = -np.full(D.n, eps)
        m = D.member(f)
        if m.is_in:
            return ConsistencyReport("avoids-sure-loss", False, {"gamble": f.tolist(), "membership": m.witness}, {"route": "grid"})
        unknown |= m.verdict is Verdict.UNKNOWN
    return ConsistencyReport("avoids-sure-loss", None if unknown else True, details={"route": "grid"})


def _sample_positive(rng, n: int, k: int) -> np.ndarray:
    F = np.abs(rng.normal(size=(k, n))) * (rng.random((k, n)) < 0.6)
    F[np.arange(k), rng.integers(n, size=k)] += rng.uniform(1e-3, 1.0, size=k)
    return F


def _sample_nonpositive(rng, n: int, k: int) -> np.ndarray:
    F = -np.abs(rng.normal(size=(k, n))) * (rng.random((k, n)) < 0.6)
    F[0] = 0.0
    return F


def is_coherent(D: DesirSet, trials: int = 200, seed: int = 0) -> ConsistencyReport:
    """Coherence with respect to the set's own closure.

    A generated set is closed by construction, so coherence reduces to
    avoiding partial loss. Other sets are checked for containing the positive
    gambles, excluding the non-positive ones and, by sampling, closure.
    """
    if isinstance(D, GeneratedSet):
        apl = avoids_partial_loss(D)
        return ConsistencyReport("coherent", apl.holds, apl.witness, {"route": "extension"})
    rng = np.random.default_rng(seed)
    pos = _sample_positive(rng, D.n, trials)
    neg = _sample_nonpositive(rng, D.n, trials)
    pc, nc = D.member_codes(pos), D.member_codes(neg)
    if np.any(pc == 0):
        i = int(np.argmax(pc == 0))
        return ConsistencyReport("coherent", False, {"axiom": "contains-positive", "gamble": pos[i].tolist()})
    if np.any(nc == 1):
        i = int(np.argmax(nc == 1))
        return ConsistencyReport("coherent", False, {"axiom": "excludes-nonpositive", "gamble": neg[i].tolist()})
    if D.spec is not None:
        for _ in range(max(1, trials // 20)):
            members = _known_members(D, rng)
            hit = _closure_violation(D, members, D.spec, rng)
            if hit is not None:
                hit["axiom"] = "closure"
                return ConsistencyReport("coherent", False, hit)
    return ConsistencyReport("coherent", True, details={"route": "sampled", "trials": trials})


def coherent_relative(
    restricted: DesirSet,
    extension: DesirSet,
    sampler: Callable[[np.random.Generator], np.ndarray],
    trials: int = 500,
    seed: int = 0,
) -> ConsistencyReport:
    """Check that members of ``extension`` drawn from the restricting class
    (via ``sampler``) are members of ``restricted`` and that the extension
    avoids partial loss."""
    rng = np.random.default_rng(seed)
    apl = avoids_partial_loss(extension)
    if apl.holds is False:
        return ConsistencyReport("coherent-relative", False, {"partial-loss": apl.witness})
    flags = []
    for _ in range(trials):
        f = np.asarray(sampler(rng), dtype=float)
        if extension.member(f).is_in and restricted.member(f).is_out:
            flags.append(f.tolist())
    return ConsistencyReport(
        "coherent-relative", not flags, {"escaped": flags[:5]} if flags else None, {"trials": trials, "flags": len(flags)}
    )


def decisiveness_probe(
    D: DesirSet, trials: int = 10_000, seed: int = 0, structured: bool = True
) -> ConsistencyReport:
    """Look for a nonzero gamble where not exactly one of ``f`` and ``-f`` is
    a member. Structured candidates from a small grid are tried first."""
    n = D.n
    batches = []
    if structured:
        grid = np.array(list(itertools.product((1.0, 0.5, 0.0, -0.5, -1.0), repeat=n)))
        batches.append(grid[np.any(grid != 0.0, axis=1)])
    rng = np.random.default_rng(seed)
    batches.append(rng.uniform(-3.0, 3.0, size=(trials, n)))
    checked = 0
    for F in batches:
        a, b = D.member_codes(F), D.member_codes(-F)
        ok = ((a == 1) & (b == 0)) | ((a == 0) & (b == 1))
        unknown = (a == -1) | (b == -1)
        bad = np.nonzero(~ok & ~unknown)[0]
        checked += int(F.shape[0])
        if bad.size:
            f = F[bad[0]]
            both = bool(a[bad[0]] == 1)
            return ConsistencyReport(
                "decisive", False, {"gamble": f.tolist(), "case": "both" if both else "neither"}, {"checked": checked}
            )
    return ConsistencyReport("decisive", True, details={"checked": checked})


def restriction_sampler(kind: str, partition=None, event=None, scale: float = 3.0):
    """Samplers for measurable gambles or gambles vanishing outside an event."""

    def measurable(rng):
        f = np.zeros(partition.n)
        for b in partition:
            f[b] = rng.uniform(-scale, scale)
        return f

    def conditional(rng):
        n = event.shape[0]
        return np.where(event, rng.uniform(-scale, scale, size=n), 0.0)

    if kind == "measurable":
        return measurable
    if kind == "conditional":
        return conditional
    raise ValueError(kind)


__all__ = [
    "ConsistencyReport",
    "avoids_partial_loss",
    "avoids_sure_loss",
    "is_coherent",
    "coherent_relative",
    "decisiveness_probe",
    "restriction_sampler",
    "sure_loss_multipliers",
]
