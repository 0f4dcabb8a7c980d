import numpy as np
import pytest

from desirability import CatalogSet, GeneratedSet, Partition
from desirability.catalog import allais_functional
from desirability.consistency import (
    avoids_partial_loss,
    avoids_sure_loss,
    coherent_relative,
    decisiveness_probe,
    is_coherent,
    restriction_sampler,
)
from desirability.operators import FiniteSet, kappa1, kappa2, kappa3, kappa4, neg_limit, prevision_induced
from desirability.structure import ConditionalSet, marginal_member

PAIR = [[-1.0, 1.0], [1.0, -2.0]]
ALL_SPECS = [kappa1(), kappa2(), kappa3(), kappa4(), neg_limit(1)]


def test_partial_loss_examples():
    rep = avoids_partial_loss(GeneratedSet(PAIR, kappa1()))
    assert rep.holds is False
    comb = np.asarray(rep.witness["lambda"]) @ np.array(PAIR)
    assert np.all(comb <= 1e-12)
    assert avoids_partial_loss(GeneratedSet(PAIR, kappa3())).holds is True


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.name)
def test_positive_generator_is_consistent(spec):
    D = GeneratedSet([[1.0, 2.0]], spec)
    assert avoids_partial_loss(D).holds is True
    assert avoids_sure_loss(D).holds is True


def test_sure_loss_examples():
    rep = avoids_sure_loss(GeneratedSet(PAIR, kappa1()))
    assert rep.holds is False
    assert rep.witness["lambda"] == pytest.approx([1.5, 1.0])
    assert rep.witness["combination"] == pytest.approx([-0.5, -0.5])
    assert avoids_sure_loss(GeneratedSet(PAIR, kappa4())).holds is True


def test_sure_loss_certificate_verifies():
    rng = np.random.default_rng(4)
    for _ in range(100):
        G = rng.integers(-3, 4, size=(3, 3)).astype(float)
        rep = avoids_sure_loss(GeneratedSet(G, kappa1()))
        if rep.holds is False:
            lam = np.asarray(rep.witness["lambda"])
            assert np.all(lam >= 0) and (lam @ G).max() < 0


def test_coherence_examples():
    assert is_coherent(GeneratedSet(PAIR, kappa3())).holds is True
    assert is_coherent(GeneratedSet(PAIR, kappa1())).holds is False
    assert is_coherent(CatalogSet("median-strict", 3)).holds is True


def test_truncated_generator_list_is_flagged():
    G = np.array([[-1.0, 2.0], [2.0, -1.0]])
    truncated = FiniteSet(G, 2)
    full = GeneratedSet(G, kappa1())
    sampler = lambda rng: rng.uniform(-3, 3, size=2)  # noqa: E731
    rep = coherent_relative(truncated, full, sampler, trials=200)
    assert rep.holds is False and rep.details["flags"] > 0


def test_marginal_restriction_of_coherent_set():
    D = GeneratedSet([[-1.0, 2.0, 0.5], [1.0, -0.5, -0.5]], kappa1())
    P = Partition.from_labels([0, 0, 1])

    class Marginal:
        n = 3

        def member(self, f):
            return marginal_member(D, f, P)

    rep = coherent_relative(Marginal(), D, restriction_sampler("measurable", partition=P), trials=300)
    assert rep.holds is True


def test_conditional_restriction_of_coherent_set():
    D = GeneratedSet([[-1.0, 2.0, 0.5], [1.0, -0.5, -0.5]], kappa1())
    B = np.array([True, True, False])
    rep = coherent_relative(ConditionalSet(D, B), D, restriction_sampler("conditional", event=B), trials=300)
    assert rep.holds is True


def test_decisiveness_counterexamples():
    owa = GeneratedSet(np.zeros((0, 3)), prevision_induced(allais_functional()), 3)
    rep = decisiveness_probe(owa)
    assert rep.holds is False
    f = np.asarray(rep.witness["gamble"])
    F = allais_functional()
    assert abs(F(f)) < 1e-12 and abs(F(-f)) < 1e-12
    rep = decisiveness_probe(GeneratedSet([[-1.0, 1.0]], kappa4()))
    assert rep.holds is False and rep.witness["case"] == "neither"


def test_precise_binary_set_is_decisive_off_the_boundary():
    rep = decisiveness_probe(CatalogSet("precise-nonlinear-binary"), trials=10_000, structured=False)
    assert rep.holds is True and rep.details["checked"] == 10_000
