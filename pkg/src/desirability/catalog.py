"""Closed-form sets of desirable gambles used as fixtures and demos.

Each entry is a vectorised predicate over rows of gambles together with the
closure it is meant to be coherent for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .gambles import DimensionError, as_gamble, as_gambles, nonpositive_rows, positive_rows
from .operators import (
    ClosureSpec,
    DesirSet,
    Membership,
    PriceFunctional,
    Verdict,
    kappa2,
    kappa3,
    kappa4,
    neg_limit,
)


def _median(F: np.ndarray) -> np.ndarray:
    return np.median(F, axis=1)


def _median_strict(F):
    return positive_rows(F) | (_median(F) > 0.0)


def _median_weak(F):
    return (_median(F) >= 0.0) & ~nonpositive_rows(F)


def _precise_nonlinear(F):
    a, b = F[:, 0], F[:, 1]
    return positive_rows(F) | ((a < 0.0) & (b > 1.0)) | ((a > 0.0) & (b > -1.0))


def _integer_ladder(F):
    # f >= (-k, k) for some integer k >= 1
    lo = np.maximum(1.0, np.ceil(-F[:, 0]))
    return positive_rows(F) | (lo <= np.floor(F[:, 1]))


def _antidiagonal(F):
    # f >= (t, -t) for some nonzero t
    a, b = F[:, 0], F[:, 1]
    return (a + b >= 0.0) & ~((a == 0.0) & (b == 0.0))


_GBR_G1 = np.array([0.5, -1.5, 0.0])
_GBR_G2 = np.array([0.9, -0.1, -0.1])


def _gbr_d3(F):
    # dominance closure of two fixed gambles and the family
    # (0.25 + d, -0.75, d), d > 0
    fam = (F[:, 0] > 0.25) & (F[:, 1] >= -0.75) & (F[:, 2] > 0.0)
    return positive_rows(F) | np.all(F >= _GBR_G1, axis=1) | np.all(F >= _GBR_G2, axis=1) | fam


def _two_blocks(F):
    # blocks {w1, w2} and {w3, w4}: dominance closure of
    # {f2 > 0, f3 = f4 = 0} and {f4 > 0, f1 = f2 = 0}
    first = (F[:, 1] > 0.0) & (F[:, 2] >= 0.0) & (F[:, 3] >= 0.0)
    second = (F[:, 3] > 0.0) & (F[:, 0] >= 0.0) & (F[:, 1] >= 0.0)
    return positive_rows(F) | first | second


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    n: int | None
    predicate: Callable[[np.ndarray], np.ndarray]
    spec: ClosureSpec
    summary: str


CATALOG: dict[str, CatalogEntry] = {
    e.key: e
    for e in (
        CatalogEntry("median-strict", None, _median_strict, kappa4(), "positive gambles and gambles with positive median"),
        CatalogEntry("median-weak", None, _median_weak, kappa4(), "nonnegative median, excluding the non-positive gambles"),
        CatalogEntry("precise-nonlinear-binary", 2, _precise_nonlinear, kappa4(), "precise but not induced by an expectation"),
        CatalogEntry("kappa-different-d1", 2, _integer_ladder, kappa2(), "dominates (-k, k) for an integer k >= 1"),
        CatalogEntry("kappa-different-d2", 2, _antidiagonal, kappa3(), "dominates (t, -t) for a nonzero t"),
        CatalogEntry("gbr-d3", 3, _gbr_d3, kappa4(), "three-generator family for conditional price bounds"),
        CatalogEntry("congnatex", 4, _two_blocks, neg_limit(1), "two conditional blocks that assemble into a loss"),
    )
}


class CatalogSet(DesirSet):
    """A closed-form set from :data:`CATALOG`."""

    def __init__(self, key: str, n: int | None = None):
        if key not in CATALOG:
            raise KeyError(f"unknown catalog set {key!r}; known: {sorted(CATALOG)}")
        entry = CATALOG[key]
        if entry.n is not None:
            if n is not None and n != entry.n:
                raise DimensionError(f"{key} lives on {entry.n} outcomes")
            n = entry.n
        if n is None:
            n = 3
        if key.startswith("median") and n % 2 == 0:
            raise DimensionError("median sets need an odd number of outcomes")
        self.key = key
        self.n = n
        self.spec = entry.spec
        self._pred = entry.predicate

    def __repr__(self) -> str:
        return f"CatalogSet({self.key!r}, n={self.n})"

    def member(self, f) -> Membership:
        f = as_gamble(f, self.n)
        ok = bool(self._pred(f[None, :])[0])
        return Membership(Verdict.IN if ok else Verdict.OUT, {"route": "closed-form"} if ok else None)

    def member_codes(self, F) -> np.ndarray:
        F = as_gambles(F, self.n)
        return self._pred(F).astype(np.int8)

    def describe(self) -> dict:
        return {"type": "catalog", "key": self.key, "n": self.n}


def allais_functional() -> PriceFunctional:
    """Ordered weighted average 0.4 min + 0.2 median + 0.4 max."""
    return PriceFunctional.owa((0.4, 0.2, 0.4))
