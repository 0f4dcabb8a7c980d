import itertools

import numpy as np
import pytest

scipy_optimize = pytest.importorskip("scipy.optimize")

from desirability import CatalogSet, GeneratedSet, Verdict
from desirability.catalog import allais_functional
from desirability.operators import (
    FiniteSet,
    PriceFunctional,
    UtilityFn,
    axiom_probe,
    equivalence_probe,
    kappa1,
    kappa2,
    kappa3,
    kappa4,
    member_kappa1,
    member_kappa2,
    member_kappa3,
    member_kappa4,
    member_neg_limit,
    member_prevision_induced,
    member_utility_warp,
    neg_limit,
    prevision_induced,
    utility_warp,
)

IN, OUT, UNKNOWN = Verdict.IN, Verdict.OUT, Verdict.UNKNOWN


# worked examples ---------------------------------------------------------------


def test_kappa4_examples():
    assert member_kappa4([[-1, 1]], (0, 2)).verdict is IN
    assert member_kappa4([[-1, 1]], (-2, 2)).verdict is OUT
    assert member_kappa4([[-1, 1]], (-1, 1)).verdict is IN
    assert member_kappa4([[0.5, -1.5, 0], [0.9, -0.1, -0.1]], (1, -1, 0)).witness["generator"] == 0


def test_kappa3_examples():
    m = member_kappa3([[-1, 1], [1, -2]], (-2.4, 2.6))
    assert m.verdict is IN and 2.4 <= m.witness["lambda"] <= 2.6
    assert member_kappa3([[-1, 1], [1, -2]], (-2.6, 2.4)).verdict is OUT
    assert member_kappa3([[-1, 1]], (-0.5, 0.5)).verdict is IN
    assert member_kappa3([[-1, 1]], (0, 0)).verdict is OUT


def test_kappa1_examples():
    m = member_kappa1([[-1, 2]], (-0.5, 1))
    assert m.verdict is IN
    assert member_kappa1([[-1, 2]], (-1, 1)).verdict is OUT
    m = member_kappa1([[-1, 1], [1, -2]], (-1, -1))
    assert m.verdict is IN
    lam = np.asarray(m.witness["lambda"])
    assert np.all(lam @ np.array([[-1, 1], [1, -2]]) <= np.array([-1, -1]) + 1e-9)


def test_kappa2_examples():
    assert member_kappa2([[-2, 2]], (-4, 4)).verdict is IN
    assert member_kappa2([[-2, 2]], (1, -1)).verdict is OUT
    assert member_kappa2([[-2, 2]], (-3, 3)).verdict is OUT


def test_utility_warp_examples():
    u = UtilityFn("odd-power", 2.0)
    assert member_utility_warp(u, [[-1, 1]], (-0.5, 0.87)).verdict is IN
    assert member_utility_warp(u, [[-1, 1]], (-0.5, 0.4)).verdict is OUT


def test_utility_warp_linear_is_conic():
    rng = np.random.default_rng(3)
    u = UtilityFn("linear")
    for _ in range(40):
        G = rng.uniform(-2, 2, size=(2, 3))
        f = rng.uniform(-2, 2, size=3)
        assert member_utility_warp(u, G, f).verdict is member_kappa1(G, f).verdict


def test_prevision_induced_examples():
    F = allais_functional()
    assert member_prevision_induced(F, (0.1, -0.9, 1.0)).verdict is IN
    assert abs(F((0.1, -0.9, 1.0)) - 0.06) < 1e-12
    assert member_prevision_induced(F, (0.0, -1.0, 0.9)).verdict is OUT
    assert abs(F((0.0, -1.0, 0.9)) + 0.04) < 1e-12
    assert member_prevision_induced(F, (0, 0, 0)).verdict is OUT


def test_neg_limit_collapse():
    assert member_neg_limit(1, [[-1, -1, 2]], (-5, -5, -5)).verdict is IN
    assert member_neg_limit(1, [[-1, 1, 2]], (-5, -5, -5)).verdict is OUT
    assert member_neg_limit(1, [[-1, 1, 2]], (-1, 1, 2)).verdict is IN


def test_zero_and_positive_for_every_kind():
    for spec in (kappa1(), kappa2(), kappa3(), kappa4(), utility_warp(UtilityFn("cara", 0.5)), neg_limit(1)):
        D = GeneratedSet([[-1.0, 2.0]], spec)
        assert D.member((0, 0)).verdict is OUT
        assert D.member((0, 0.1)).verdict is IN


def test_member_codes_match_member():
    rng = np.random.default_rng(7)
    F = rng.uniform(-2, 2, size=(60, 2))
    for spec in (kappa1(), kappa2(), kappa3(), kappa4(), neg_limit(1)):
        D = GeneratedSet([[-1.0, 1.5], [2.0, -1.0]], spec)
        codes = D.member_codes(F)
        assert codes.tolist() == [D.member(f).verdict.value for f in F]


def test_finite_set_and_catalog():
    S = FiniteSet([[1.0, -1.0]], 2)
    assert S.member((1, -1)).is_in and S.member((2, -1)).is_out
    D = CatalogSet("median-strict", 3)
    assert D.member((1, 1, -5)).is_in
    assert D.member((-1, 0, 5)).is_out


# independent oracles -----------------------------------------------------------


def _conic_oracle(G, f):
    """Conic closure membership through scipy: f is a member when it is
    positive or when some nonzero multiplier vector puts the combination of
    generators below f, that is, when max sum(lam) over {lam >= 0, lam G <= f}
    is positive."""
    G = np.asarray(G, float)
    if np.all(f >= 0) and np.any(f > 0):
        return True
    m = G.shape[0]
    # a generous cap keeps the program bounded; feasible points here have small totals
    A = np.vstack([G.T, np.ones((1, m))])
    res = scipy_optimize.linprog(-np.ones(m), A_ub=A, b_ub=np.append(f, 1e6), bounds=[(0, None)] * m, method="highs")
    return res.status == 0 and -res.fun > 1e-9


def test_kappa1_against_scipy():
    rng = np.random.default_rng(11)
    agree = checked = 0
    for _ in range(300):
        n = int(rng.integers(2, 4))
        G = rng.integers(-3, 4, size=(int(rng.integers(1, 4)), n)).astype(float)
        f = rng.integers(-3, 4, size=n).astype(float)
        mine = member_kappa1(G, f).verdict
        theirs = _conic_oracle(G, f)
        checked += 1
        agree += (mine is IN) == theirs
    assert agree == checked


def test_kappa2_against_enumeration():
    rng = np.random.default_rng(5)
    for _ in range(150):
        n = int(rng.integers(2, 4))
        m = int(rng.integers(1, 3))
        G = rng.integers(-3, 4, size=(m, n)).astype(float)
        f = rng.integers(-6, 4, size=n).astype(float)
        mine = member_kappa2(G, f, max_multiplicity=8).verdict
        if np.all(f >= 0) and np.any(f > 0):
            expected = True
        else:
            expected = any(
                np.all(f >= np.array(k) @ G) and any(k)
                for k in itertools.product(range(9), repeat=m)
            )
        if mine is UNKNOWN:
            continue
        assert (mine is IN) == expected, (G, f)


def test_kappa3_against_grid():
    rng = np.random.default_rng(9)
    lams = np.linspace(1e-3, 10, 20001)
    for _ in range(200):
        G = rng.integers(-3, 4, size=(2, 2)).astype(float)
        f = rng.uniform(-4, 4, size=2)
        mine = member_kappa3(G, f).verdict is IN
        grid = any(np.any(np.all(f[None, :] >= lams[:, None] * g[None, :], axis=1)) for g in G if np.any(g != 0))
        positive = np.all(f >= 0) and np.any(f > 0)
        if mine != (grid or positive):
            # only interval endpoints may differ from a finite grid
            m = member_kappa3(G, f)
            assert m.is_in and not grid
            lam = m.witness["lambda"]
            assert np.all(f >= lam * G[m.witness["generator"]] - 1e-12)


def test_kappa4_against_numpy():
    rng = np.random.default_rng(2)
    G = rng.uniform(-1, 1, size=(5, 3))
    F = rng.uniform(-1, 1, size=(500, 3))
    D = GeneratedSet(G, kappa4())
    expected = np.any(np.all(F[:, None, :] >= G[None, :, :], axis=2), axis=1) | (
        np.all(F >= 0, axis=1) & np.any(F > 0, axis=1)
    )
    assert ((D.member_codes(F) == 1) == expected).all()


def test_kappa2_unknown_when_bound_exceeded():
    # reaching (-10, 10) from (-1, 1) needs ten copies; a bound of 4 cannot certify either way
    m = member_kappa2([[-1, 1], [1, -1.5]], (-10, 10), max_multiplicity=4)
    assert m.verdict in (IN, UNKNOWN)
    assert member_kappa2([[-1, 1]], (-10, 10), max_multiplicity=4).verdict is not IN


# probes ------------------------------------------------------------------------


@pytest.mark.parametrize("spec", [kappa1(), kappa4()], ids=lambda s: s.name)
def test_axiom_probe_passes(spec):
    rep = axiom_probe(spec, trials=200, seed=0)
    assert rep.ok, rep.to_dict()


def test_axiom_probe_reports_unknowns_separately():
    rep = axiom_probe(kappa2(max_multiplicity=3), trials=60, seed=1)
    assert rep.ok
    assert rep.unknown >= 0 and set(rep.checked) == {"C1", "C2", "C3", "C4"}


def test_equivalence_probe():
    assert equivalence_probe(kappa1(), kappa1(), trials=30).status == "ConsistentSoFar"
    rep = equivalence_probe(kappa3(), kappa4(), trials=0, seed_sets=[CatalogSet("kappa-different-d1")])
    assert rep.status == "Distinguished"
    # the antidiagonal set is closed under neither, so the random sets settle this pair
    assert equivalence_probe(kappa1(), kappa2(), trials=0, seed_sets=[CatalogSet("kappa-different-d2")]).status == "ConsistentSoFar"
    rep = equivalence_probe(kappa1(), kappa2(), trials=50, seed_sets=[CatalogSet("kappa-different-d2")])
    assert rep.status == "Distinguished" and rep.witness["closed_under"] == "kappa2"


def test_prevision_induced_requires_matching_size():
    spec = prevision_induced(PriceFunctional.linear((0.5, 0.5)))
    with pytest.raises(ValueError):
        GeneratedSet([[1.0, 2.0, 3.0]], spec)
