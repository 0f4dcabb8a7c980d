"""Acceptance suite.

Each criterion is one test that prints a ``PASS`` or ``FAIL`` line. Run it
with ``pytest tests/test_acceptance.py -v`` or as a script::

    python3 tests/test_acceptance.py
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

from desirability import (
    CatalogSet,
    GeneratedSet,
    PriceFunctional,
    UtilityFn,
    Verdict,
    axiom_probe,
    kappa1,
    kappa2,
    kappa3,
    kappa4,
    neg_limit,
    prevision_induced,
    utility_warp,
)
from desirability.catalog import allais_functional
from desirability.cli import main as cli_main
from desirability.consistency import avoids_sure_loss, is_coherent
from desirability.credal import credal_intersection, is_empty
from desirability.decide import allais_demo
from desirability.demos import operator_zoo
from desirability.gambles import Partition
from desirability.operators import _random_generators
from desirability.previsions import (
    gbr_conditional,
    is_precise,
    kappa1_lp_lower,
    lower_prevision,
    lower_previsions,
    upper_previsions,
)
from desirability.scenario import bundled_names
from desirability.structure import ConditionalFamily, conglomerability_check

sys.path.insert(0, str(Path(__file__).parent))
from conftest import random_conic_coherent  # noqa: E402

FIXTURE_BUDGET = 5.0
ALL_KINDS = {
    "kappa1": kappa1(),
    "kappa2": kappa2(),
    "kappa3": kappa3(),
    "kappa4": kappa4(),
    "utility-warp odd-power": utility_warp(UtilityFn("odd-power", 3.0)),
    "utility-warp cara": utility_warp(UtilityFn("cara", 0.7)),
    "prevision-induced owa": prevision_induced(PriceFunctional.owa((0.4, 0.2, 0.4))),
    "neg-limit": neg_limit(1),
}


def _report(number: int, title: str, check) -> None:
    start = time.perf_counter()
    try:
        detail = check() or ""
    except Exception as exc:
        _say(f"FAIL criterion {number:2d} {title}: {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    _say(f"PASS criterion {number:2d} {title} ({elapsed:.2f}s) {detail}".rstrip())


_capture = None


def _say(line: str) -> None:
    if _capture is not None:
        with _capture.disabled():
            print("\n" + line)
    else:
        print(line)


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capture
    _capture = capsys
    yield
    _capture = None


def _timed(check):
    def wrapped():
        start = time.perf_counter()
        detail = check()
        elapsed = time.perf_counter() - start
        assert elapsed < FIXTURE_BUDGET, f"fixture took {elapsed:.2f}s"
        return detail

    return wrapped


# 1 ---------------------------------------------------------------------------------


def check_scaling_prices():
    D = GeneratedSet([[-1.0, 1.0], [1.0, -2.0]], kappa3())
    for f, ref in (((-2.0, 3.0), 0.5), ((3.0, -2.0), 4 / 3), ((1.0, 1.0), 1.0)):
        got = lower_prevision(D, f).value
        assert abs(got - ref) <= 1e-6, (f, got, ref)


# 2 ---------------------------------------------------------------------------------


def check_dominance_homogeneity_failure():
    D = GeneratedSet([[-1.0, 1.0]], kappa4())
    a = lower_prevision(D, (-1.0, 1.0)).value
    b = lower_prevision(D, (-2.0, 2.0)).value
    assert abs(a - 0.0) <= 1e-6 and abs(b + 1.0) <= 1e-6, (a, b)


# 3 ---------------------------------------------------------------------------------


def check_allais():
    rep = allais_demo()
    ref = (1.0, 0.96, 0.6, 0.76)
    assert all(abs(a - b) <= 1e-12 for a, b in zip(rep["prices"], ref)), rep["prices"]
    # the bisection brackets carry the exact functional value alongside
    D = GeneratedSet(np.zeros((0, 3)), prevision_induced(allais_functional()), 3)
    brackets = lower_previsions(D, rep["options"])
    assert all(abs(b.functional_value - r) <= 1e-12 for b, r in zip(brackets, ref))
    assert all(abs(b.value - r) <= 1e-9 for b, r in zip(brackets, ref))
    assert rep["experiment_1"]["optimal"] == [0] and rep["experiment_2"]["optimal"] == [1]
    imp = rep["impossibility"]
    assert imp["constant"] is not None and abs(imp["constant"] + 0.02) <= 1e-12
    assert imp["class"] == "StrictlyNegative"


# 4 ---------------------------------------------------------------------------------


def check_precise_nonlinear():
    D = CatalogSet("precise-nonlinear-binary")
    for f, ref in (((-2.0, 1.0), 0.0), ((-1.0, 0.5), -0.5)):
        lo = lower_prevision(D, f).value
        up = upper_previsions(D, [f])[0].value
        assert abs(lo - ref) <= 1e-6 and abs(up - ref) <= 1e-6, (f, lo, up)
    rep = is_precise(D, samples=10_000)
    assert rep.holds, rep
    return "(is_precise on 10000 samples)"


# 5 ---------------------------------------------------------------------------------

GBR_F, GBR_B = (1.0, -1.0, 0.0), (True, True, False)


def check_gbr_sandwich():
    for key, ref in (("median-strict", (-1.0, -1.0, 1.0)), ("median-weak", (-1.0, 1.0, 1.0))):
        res = gbr_conditional(CatalogSet(key), GBR_F, GBR_B)
        got = (res.gbr.value, res.member_sup.value, res.weak_sup.value)
        assert all(abs(a - b) <= 1e-6 for a, b in zip(got, ref)), (key, got)
    res = gbr_conditional(CatalogSet("gbr-d3"), GBR_F, GBR_B)
    assert abs(res.member_sup.value - 0.5) <= 1e-6
    assert res.gbr.value <= res.member_sup.value + 1e-9 <= res.weak_sup.value + 2e-9
    from desirability.demos import demo_gbr_bounds

    demo = demo_gbr_bounds()
    assert set(demo["flagged"]) <= {"gbr-d3 gbr", "gbr-d3 weak_sup"}
    return f"(gbr-d3 certified outer values {res.gbr.value:.6g}, {res.weak_sup.value:.6g}; reference 0.1, 0.75 flagged)"


# 6 ---------------------------------------------------------------------------------


def check_conglomerability_witness():
    D = CatalogSet("congnatex")
    P = Partition(((True, True, False, False), (False, False, True, True)))
    rep = conglomerability_check(D, ConditionalFamily.from_set(D, P))
    assert rep.status == "Witness"
    assert rep.witness == [-1.0, 1.0, -1.0, 1.0]
    assert rep.details["extension_avoids_partial_loss"] is False


# 7 ---------------------------------------------------------------------------------


def check_operator_zoo():
    rep = operator_zoo(sets=500, seed=0)
    assert all(v == 0 for v in rep["violations"].values()), rep["violations"]
    return f"({rep['probes']} probes, {rep['unknown']} unknown)"


# 8 ---------------------------------------------------------------------------------


def check_axioms(name):
    def check():
        rep = axiom_probe(ALL_KINDS[name], trials=200, seed=0)
        assert rep.ok, rep.to_dict()
        assert sum(rep.checked.values()) > 0
        return f"({sum(rep.checked.values())} checks, {rep.unknown} unknown)"

    return check


def _coherent_fixtures():
    yield GeneratedSet([[-1.0, 1.0], [1.0, -2.0]], kappa3())
    yield GeneratedSet([[-1.0, 1.0]], kappa4())
    yield GeneratedSet([[-1.0, 2.0]], kappa1())
    yield GeneratedSet(np.zeros((0, 3)), prevision_induced(allais_functional()), 3)
    for key in ("median-strict", "median-weak", "precise-nonlinear-binary", "gbr-d3"):
        yield CatalogSet(key, 3) if CatalogSet(key).n is None else CatalogSet(key)
    rng = np.random.default_rng(8)
    for _ in range(5):
        G, _ = random_conic_coherent(rng, 3)
        yield GeneratedSet(G, kappa1())


def check_coherent_fixtures():
    rng = np.random.default_rng(0)
    count = 0
    for D in _coherent_fixtures():
        assert is_coherent(D, trials=50).holds is True, D
        F = rng.uniform(-2.0, 2.0, size=(200, D.n))
        pos = np.abs(F)
        pos[:, 0] += 0.1
        nonpos = -np.abs(F)
        assert np.all(D.member_codes(pos) == Verdict.IN.value)
        assert np.all(D.member_codes(nonpos) == Verdict.OUT.value)
        assert D.member(np.zeros(D.n)).is_out
        count += 1
    return f"({count} coherent fixtures)"


# 9 ---------------------------------------------------------------------------------


def check_conic_oracle_equivalence():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 5))
        if rng.random() < 0.7:
            G, _ = random_conic_coherent(rng, n)
        else:
            G = rng.uniform(-2.0, 2.0, size=(int(rng.integers(1, 4)), n))
        f = rng.uniform(-3.0, 3.0, size=n)
        D = GeneratedSet(G, kappa1())
        got = lower_previsions(D, [f], boundary=False)[0].value
        ref = kappa1_lp_lower(G, f)
        if np.isinf(ref) or np.isinf(got):
            assert got == ref, (G.tolist(), f.tolist(), got, ref)
            continue
        worst = max(worst, abs(got - ref))
        assert abs(got - ref) <= 1e-6, (G.tolist(), f.tolist(), got, ref)
    return f"(max deviation {worst:.1e})"


# 10 --------------------------------------------------------------------------------


def check_credal_geometry():
    C = credal_intersection(GeneratedSet([[-1.0, 2.0]], kappa1()))
    verts = sorted(tuple(v.p) for v in C.vertices())
    ref = sorted([(2 / 3, 1 / 3), (0.0, 1.0)])
    assert len(verts) == 2 and all(np.max(np.abs(np.subtract(a, b))) <= 1e-9 for a, b in zip(verts, ref)), verts

    G = np.array([[-1.0, 1.0], [1.0, -2.0]])
    rep = is_empty(credal_intersection(GeneratedSet(G, kappa3())))
    assert rep.empty
    lam = np.asarray(rep.certificate["lambda"], dtype=float)
    assert np.all(lam >= 0) and np.max(lam @ G) < 0

    rng = np.random.default_rng(10)
    agree = empty = 0
    for _ in range(100):
        n = int(rng.integers(2, 4))
        G = rng.integers(-3, 4, size=(int(rng.integers(1, 5)), n)).astype(float)
        separated = not is_empty(credal_intersection(GeneratedSet(G, kappa1()))).empty
        asl = avoids_sure_loss(GeneratedSet(G, kappa2())).holds
        assert asl is not None
        assert separated == asl, G.tolist()
        agree += 1
        empty += not separated
    return f"(separation agrees on {agree}/100, {empty} empty)"


# 11 --------------------------------------------------------------------------------

# kinds whose lower prices come from bisection, each with a share of the 500 samples
PRICE_KINDS = {
    "kappa1": (kappa1(), 80),
    "kappa2": (kappa2(), 60),
    "kappa3": (kappa3(), 80),
    "kappa4": (kappa4(), 80),
    "utility-warp": (utility_warp(UtilityFn("odd-power", 3.0)), 60),
    "prevision-induced": (prevision_induced(PriceFunctional.owa((0.4, 0.2, 0.4))), 80),
    "neg-limit": (neg_limit(1), 60),
}


def check_conjugacy_and_additivity():
    rng = np.random.default_rng(11)
    total = finite = 0
    worst_conj = worst_add = 0.0
    for spec, count in PRICE_KINDS.values():
        for _ in range(count):
            n = 3 if spec.kind.value == "prevision-induced" else int(rng.integers(2, 4))
            G = _random_generators(rng, n, int(rng.integers(1, 3)), spec)
            D = GeneratedSet(G, spec, n)
            f = rng.uniform(-2.0, 2.0, size=n)
            c = float(rng.uniform(-2.0, 2.0))
            # conjugacy on (f, -f) and additivity on -f share one price search
            lo_neg, lo_shift = lower_previsions(D, [-f, -f + c], boundary=False)
            up = upper_previsions(D, [f], boundary=False)[0].value
            conj = 0.0 if up == -lo_neg.value else abs(up + lo_neg.value)
            same_inf = np.isinf(lo_neg.value) and lo_shift.value == lo_neg.value
            add = 0.0 if same_inf else abs(lo_shift.value - lo_neg.value - c)
            assert conj <= 2e-9 and add <= 2e-9, (spec.name, G.tolist(), f.tolist(), c, conj, add)
            worst_conj, worst_add = max(worst_conj, conj), max(worst_add, add)
            total += 1
            finite += bool(np.isfinite(lo_neg.value))
    assert total == 500
    return f"(500 samples, {finite} with finite prices, worst conjugacy {worst_conj:.1e}, worst additivity {worst_add:.1e})"


# 12 --------------------------------------------------------------------------------


def check_determinism(tmp_dir: Path):
    names = bundled_names()
    assert names
    for name in names:
        outputs = []
        for run in range(2):
            out = tmp_dir / f"{name}.{run}.json"
            code = cli_main(["run", "--scenario", name, "--seed", "7", "--out", str(out)])
            assert code == 0, (name, code)
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1], name
    return f"({len(names)} bundled scenarios)"


# pytest entry points --------------------------------------------------------------


def test_criterion_01_scaling_prices():
    _report(1, "scaling closure prices", _timed(check_scaling_prices))


def test_criterion_02_dominance_homogeneity_failure():
    _report(2, "dominance closure is not homogeneous", _timed(check_dominance_homogeneity_failure))


def test_criterion_03_allais():
    _report(3, "Allais prices, choices and impossibility", _timed(check_allais))


def test_criterion_04_precise_nonlinear():
    _report(4, "precise nonlinear binary set", _timed(check_precise_nonlinear))


def test_criterion_05_gbr_sandwich():
    _report(5, "conditional price sandwich", _timed(check_gbr_sandwich))


def test_criterion_06_conglomerability():
    _report(6, "conglomerability witness", _timed(check_conglomerability_witness))


def test_criterion_07_operator_zoo():
    _report(7, "operator containment zoo", _timed(check_operator_zoo))


@pytest.mark.parametrize("kind", sorted(ALL_KINDS))
def test_criterion_08_axioms(kind):
    _report(8, f"closure axioms for {kind}", _timed(check_axioms(kind)))


def test_criterion_08_coherent_fixtures():
    _report(8, "coherent fixtures exclude zero", _timed(check_coherent_fixtures))


def test_criterion_09_conic_oracle_equivalence():
    _report(9, "conic bisection matches LP", _timed(check_conic_oracle_equivalence))


def test_criterion_10_credal_geometry():
    _report(10, "credal geometry and separation", _timed(check_credal_geometry))


def test_criterion_11_conjugacy_and_additivity():
    _report(11, "conjugacy and constant additivity", _timed(check_conjugacy_and_additivity))


def test_criterion_12_determinism(tmp_path):
    _report(12, "byte-identical reruns", _timed(lambda: check_determinism(tmp_path)))


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        cases = [
            (1, "scaling closure prices", check_scaling_prices),
            (2, "dominance closure is not homogeneous", check_dominance_homogeneity_failure),
            (3, "Allais prices, choices and impossibility", check_allais),
            (4, "precise nonlinear binary set", check_precise_nonlinear),
            (5, "conditional price sandwich", check_gbr_sandwich),
            (6, "conglomerability witness", check_conglomerability_witness),
            (7, "operator containment zoo", check_operator_zoo),
            *[(8, f"closure axioms for {k}", check_axioms(k)) for k in sorted(ALL_KINDS)],
            (8, "coherent fixtures exclude zero", check_coherent_fixtures),
            (9, "conic bisection matches LP", check_conic_oracle_equivalence),
            (10, "credal geometry and separation", check_credal_geometry),
            (11, "conjugacy and constant additivity", check_conjugacy_and_additivity),
            (12, "byte-identical reruns", lambda: check_determinism(Path(tmp))),
        ]
        failed = 0
        for number, title, check in cases:
            try:
                _report(number, title, _timed(check))
            except Exception:
                failed += 1
        sys.exit(1 if failed else 0)
