import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from desirability import GeneratedSet, Verdict, _kernels
from desirability.catalog import allais_functional
from desirability.consistency import avoids_partial_loss
from desirability.credal import credal_intersection
from desirability.gambles import GambleClass, classify
from desirability.operators import (
    UtilityFn,
    kappa1,
    kappa2,
    kappa3,
    kappa4,
    neg_limit,
    prevision_induced,
    utility_warp,
)
from desirability.previsions import kappa1_lp_lower, lower_previsions, upper_previsions

SPECS = {
    "kappa1": kappa1(),
    "kappa2": kappa2(max_multiplicity=8),
    "kappa3": kappa3(),
    "kappa4": kappa4(),
    "utility-warp": utility_warp(UtilityFn("odd-power", 3.0)),
    "neg-limit": neg_limit(1),
}
FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

# values on a coarse grid keep the exact closures away from rounding accidents
value = st.integers(-6, 6).map(lambda k: k / 2)


@st.composite
def instances(draw, n=None, m_max=3):
    n = n or draw(st.integers(2, 3))
    m = draw(st.integers(1, m_max))
    G = np.array([[draw(value) for _ in range(n)] for _ in range(m)])
    f = np.array([draw(value) for _ in range(n)])
    return G, f


spec_names = st.sampled_from(sorted(SPECS))


@FAST
@given(instances(), spec_names)
def test_generators_and_positive_gambles_are_members(inst, name):
    G, f = inst
    D = GeneratedSet(G, SPECS[name])
    for g in G:
        if np.any(g != 0):
            assert D.member(g).verdict in (Verdict.IN, Verdict.UNKNOWN)
    pos = np.abs(f) + 0.5
    assert D.member(pos).is_in


@FAST
@given(instances(), spec_names, arrays(float, 3, elements=st.floats(0, 2)))
def test_membership_is_closed_under_dominance(inst, name, bump):
    G, f = inst
    D = GeneratedSet(G, SPECS[name])
    if D.member(f).is_in:
        assert D.member(f + bump[: f.shape[0]]).verdict is not Verdict.OUT


@FAST
@given(instances(), spec_names)
def test_zero_is_out_exactly_when_partial_loss_is_avoided(inst, name):
    G, _ = inst
    D = GeneratedSet(G, SPECS[name])
    rep = avoids_partial_loss(D)
    if rep.holds is True:
        assert D.member(np.zeros(D.n)).is_out
        for f in (-np.ones(D.n), -np.abs(G).sum(axis=0) - 1):
            assert not D.member(f).is_in


@FAST
@given(instances(), st.sampled_from(["kappa1", "kappa3", "kappa4", "neg-limit", "utility-warp"]))
def test_conjugacy_and_price_bounds(inst, name):
    G, f = inst
    D = GeneratedSet(G, SPECS[name])
    lo = lower_previsions(D, [f, -f], boundary=False)
    up = upper_previsions(D, [f, -f], boundary=False)
    for u, l in ((up[0], lo[1]), (up[1], lo[0])):
        assert u.value == -l.value or abs(u.value + l.value) <= 2e-9
    if avoids_partial_loss(D).holds:
        assert lo[0].value >= f.min() - 1e-9
        assert up[0].value <= f.max() + 1e-9


@FAST
@given(instances(), st.sampled_from(["kappa1", "kappa3", "kappa4", "neg-limit"]), st.sampled_from([-2.0, -0.5, 0.25, 3.0]))
def test_constant_additivity(inst, name, c):
    G, f = inst
    D = GeneratedSet(G, SPECS[name])
    a, b = lower_previsions(D, [f, f + c], boundary=False)
    if np.isfinite(a.value):
        assert abs(b.value - a.value - c) <= 2e-9


@FAST
@given(instances(n=3))
def test_conic_prices_match_the_linear_program(inst):
    G, f = inst
    D = GeneratedSet(G, kappa1())
    if avoids_partial_loss(D).holds:
        (br,) = lower_previsions(D, [f])
        assert abs(br.value - kappa1_lp_lower(G, f)) <= 1e-6


@FAST
@given(instances(n=3), st.sampled_from([0.5, 2.0, 3.0]))
def test_homogeneity_for_conic_and_scaling(inst, t):
    G, f = inst
    for spec in (kappa1(), kappa3()):
        D = GeneratedSet(G, spec)
        if avoids_partial_loss(D).holds:
            a, b = lower_previsions(D, [f, t * f], boundary=False)
            assert abs(b.value - t * a.value) <= 1e-8 * (1 + t)


@FAST
@given(instances(n=3), instances(n=3))
def test_conic_superadditivity(inst, other):
    G, f = inst
    _, g = other
    D = GeneratedSet(G, kappa1())
    if avoids_partial_loss(D).holds:
        a, b, s = lower_previsions(D, [f, g, f + g], boundary=False)
        assert s.value >= a.value + b.value - 3e-9


@FAST
@given(instances(n=3))
def test_credal_lower_expectation_is_attained_at_a_vertex(inst):
    G, f = inst
    C = credal_intersection(GeneratedSet(G, kappa1()))
    verts = C.vertices()
    if verts:
        assert abs(min(float(np.dot(v.p, f)) for v in verts) - C.lower(f)) <= 1e-9
        assert all(C.contains(v.p) for v in verts)


@FAST
@given(arrays(float, 4, elements=st.floats(-5, 5, allow_nan=False)))
def test_classification_partitions_gambles(f):
    c = classify(f)
    if c is GambleClass.POSITIVE:
        assert f.min() >= 0 and f.max() > 0
    elif c is GambleClass.STRICTLY_NEGATIVE:
        assert f.max() < 0
    elif c is GambleClass.NEGATIVE_OR_ZERO:
        assert f.max() <= 0
    else:
        assert f.min() < 0 < f.max()


@settings(max_examples=60, deadline=None)
@given(instances(n=3, m_max=5), st.integers(0, 2**31 - 1))
def test_backends_agree_on_scans(inst, seed):
    if "cython" not in _kernels.available_backends():
        return
    G, _ = inst
    F = np.random.default_rng(seed).uniform(-3, 3, size=(25, 3))
    py, cy = _kernels.get_backend("python"), _kernels.get_backend("cython")
    G = np.ascontiguousarray(G)
    assert np.array_equal(py.dominance_scan(G, F), cy.dominance_scan(G, F))
    assert np.array_equal(py.scaling_scan(G, F)[0], cy.scaling_scan(G, F)[0])


@FAST
@given(arrays(float, 3, elements=st.floats(-3, 3, allow_nan=False)), st.floats(-2, 2))
def test_owa_prices_are_translation_equivariant(f, c):
    D = GeneratedSet(np.zeros((0, 3)), prevision_induced(allais_functional()), 3)
    a, b = lower_previsions(D, [f, f + c], boundary=False)
    assert abs(b.value - a.value - c) <= 2e-9
    assert abs(a.functional_value - allais_functional()(f)) <= 1e-12
