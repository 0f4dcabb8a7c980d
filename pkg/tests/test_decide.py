import numpy as np
import pytest

from desirability import GeneratedSet
from desirability.catalog import allais_functional
from desirability.decide import (
    ALLAIS_OPTIONS,
    CRITERIA,
    allais_demo,
    decide,
    e_admissible_kappa1,
    gamma_maximax,
    gamma_maximin,
    generic_e_admissibility,
    generic_maximality,
    interval_dominance,
    maximality_kappa1,
)
from desirability.gambles import GambleClass
from desirability.operators import PriceFunctional, kappa1, kappa4, prevision_induced

from conftest import random_conic_coherent


def owa_set():
    return GeneratedSet(np.zeros((0, 3)), prevision_induced(allais_functional()), 3)


def linear_set(p):
    return GeneratedSet(np.zeros((0, len(p))), prevision_induced(PriceFunctional.linear(p)), len(p))


K4 = GeneratedSet([[-1.0, 1.0]], kappa4())
VACUOUS = np.zeros((0, 2))
FAIR_COIN = [[1.0, -1.0], [-1.0, 1.0]]


@pytest.mark.parametrize("rule", [gamma_maximin, gamma_maximax, interval_dominance])
def test_allais_pairs(rule):
    assert rule(owa_set(), ALLAIS_OPTIONS[[0, 1]]).optimal == [0]
    assert rule(owa_set(), ALLAIS_OPTIONS[[2, 3]]).optimal == [1]


def test_duplicate_and_single_options():
    assert gamma_maximin(owa_set(), [[1, 1, 1], [1, 1, 1]]).optimal == [0, 1]
    for name in CRITERIA:
        D = K4 if name not in ("maximality", "e-admissibility") else GeneratedSet([[-1.0, 2.0]], kappa1())
        assert decide(D, [[0.3, -0.1]], name).optimal == [0]


def test_maximax_keeps_both_upper_peaks():
    assert gamma_maximax(K4, [[1, 0], [0, 1]]).optimal == [0, 1]


def test_interval_dominance():
    assert interval_dominance(K4, [[0.2, 0.2], [0, 1]]).optimal == [0, 1]
    rep = interval_dominance(K4, [[10, 10], [0, 0]])
    assert rep.optimal == [0] and rep.rejected[0]["option"] == 1


def test_maximality_conic():
    assert maximality_kappa1(VACUOUS, [[1, 0], [0, 1]]).optimal == [0, 1]
    rep = maximality_kappa1(FAIR_COIN, [[1, 0], [0, 0.5]])
    assert rep.optimal == [0]
    assert rep.rejected[0]["lower_of_difference"] == pytest.approx(0.25)


def test_e_admissibility_conic():
    assert e_admissible_kappa1(VACUOUS, [[1, 0], [0, 1]]).optimal == [0, 1]
    assert e_admissible_kappa1(FAIR_COIN, [[1, 0], [0, 0.5]]).optimal == [0]
    rep = e_admissible_kappa1([[-1.0, 2.0]], [[1, 0], [0, 1], [0.9, -0.1]])
    assert 2 not in rep.optimal


def test_e_admissibility_unavailable_for_empty_credal_set():
    rep = e_admissible_kappa1([[-1.0, 1.0], [1.0, -2.0]], [[1, 0], [0, 1]])
    assert rep.available is False


def _grid(steps=60):
    """Mass functions on three outcomes with coordinates in multiples of 1/steps."""
    return np.array([(i, j, steps - i - j) for i in range(steps + 1) for j in range(steps + 1 - i)], float) / steps


def test_e_admissibility_against_grid_search():
    rng = np.random.default_rng(0)
    P = _grid()
    for _ in range(30):
        G, _ = random_conic_coherent(rng, 3)
        J = rng.uniform(-1, 1, size=(4, 3))
        feasible = P[np.all(P @ G.T >= 0, axis=1)]
        if not len(feasible):
            continue
        best = (feasible @ J.T).argmax(axis=1)
        grid_admissible = set(best.tolist())
        mine = set(e_admissible_kappa1(G, J).optimal)
        # a grid point ranks an option first only if some exact point does
        assert grid_admissible <= mine


def test_maximality_against_grid_search():
    rng = np.random.default_rng(1)
    P = _grid()
    for _ in range(30):
        G, _ = random_conic_coherent(rng, 3)
        J = rng.uniform(-1, 1, size=(4, 3))
        feasible = P[np.all(P @ G.T >= 0, axis=1)]
        rep = maximality_kappa1(G, J)
        for r in rep.rejected:
            g, f = J[r["by"]], J[r["option"]]
            assert (feasible @ (g - f)).min() >= r["lower_of_difference"] - 1e-9 > 0


def test_nesting_of_criteria():
    rng = np.random.default_rng(2)
    for _ in range(25):
        G, _ = random_conic_coherent(rng, 3)
        D = GeneratedSet(G, kappa1())
        J = rng.uniform(-1, 1, size=(4, 3))
        e = set(e_admissible_kappa1(G, J).optimal)
        mx = set(maximality_kappa1(G, J).optimal)
        idom = set(interval_dominance(D, J).optimal)
        mm = set(gamma_maximin(D, J).optimal)
        assert e <= mx <= idom
        assert mm <= idom


def test_dominated_options_never_chosen():
    J = [[1.0, 1.0], [0.5, 0.9]]
    G = [[-1.0, 2.0]]
    for name in ("gamma-maximin", "interval-dominance", "maximality", "e-admissibility"):
        assert 1 not in decide(GeneratedSet(G, kappa1()), J, name).optimal


def test_generic_criteria():
    assert generic_maximality(owa_set(), ALLAIS_OPTIONS[[0, 1]], [owa_set()]).optimal == [0]
    assert generic_maximality(owa_set(), ALLAIS_OPTIONS[[2, 3]], [owa_set()]).optimal == [1]
    J = [[1, 0], [0, 1], [0.4, 0.4]]
    rep = generic_e_admissibility(K4, J, [linear_set((0.7, 0.3)), linear_set((0.2, 0.8))])
    assert rep.optimal == [0, 1]
    assert generic_maximality(K4, J).available is False
    assert generic_e_admissibility(K4, J).available is False


def test_allais_demo():
    rep = allais_demo()
    assert rep["prices"] == pytest.approx([1.0, 0.96, 0.6, 0.76], abs=1e-12)
    assert rep["preferences"] == {"f1 over f2": True, "f4 over f3": True}
    assert rep["impossibility"]["constant"] == pytest.approx(-0.02, abs=1e-12)
    assert rep["impossibility"]["class"] == GambleClass.STRICTLY_NEGATIVE.value


def test_unknown_criterion():
    with pytest.raises(ValueError):
        decide(K4, [[1, 0]], "minimax-regret")
