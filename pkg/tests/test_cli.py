import json
import subprocess
import sys

import pytest

from desirability.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_QUERY, EXIT_SCHEMA, jsonable, main, to_csv
from desirability.scenario import SchemaError, bundled_names, load, parse


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, data, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


BASE = {
    "space": ["a", "b"],
    "gambles": {"g": [-1, 2], "f": [1, -1]},
    "operator": {"kind": "kappa1"},
    "generators": ["g"],
    "queries": [{"type": "lower-prevision", "args": {"gamble": "f"}}],
}


def test_allais_report(capsys):
    code, out, _ = run(["run", "--scenario", "allais"], capsys)
    assert code == EXIT_OK
    rep = json.loads(out)
    prices = [r["result"]["functional_value"] for r in rep["records"][:4]]
    assert prices == pytest.approx([1.0, 0.96, 0.6, 0.76], abs=1e-12)
    values = [r["result"]["value"] for r in rep["records"][:4]]
    assert values == pytest.approx([1.0, 0.96, 0.6, 0.76], abs=1e-8)
    assert rep["records"][4]["result"]["optimal_names"] == ["f1"]
    assert rep["records"][5]["result"]["optimal_names"] == ["f4"]


def test_scaled_pair_report(capsys):
    code, out, _ = run(["run", "--scenario", "kappa3-previsions"], capsys)
    rep = json.loads(out)
    values = [r["result"]["value"] for r in rep["records"][:3]]
    assert code == EXIT_OK and values == pytest.approx([0.5, 4 / 3, 1.0], abs=1e-6)
    assert rep["records"][7]["result"]["emptiness"]["empty"] is True


def test_bracket_fields(capsys):
    _, out, _ = run(["run", "--scenario", "kappa4-homogeneity"], capsys)
    res = json.loads(out)["records"][0]["result"]
    assert {"lo", "hi", "boundary_in"} <= set(res)


@pytest.mark.parametrize("name", [n[:-5] for n in bundled_names()])
def test_bundled_scenarios_are_deterministic(name, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "--scenario", name, "--out", str(a)]) == EXIT_OK
    assert main(["run", "--scenario", name, "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_bad_vector_length_exits_2(tmp_path, capsys):
    data = dict(BASE, gambles={"g": [-1, 2, 3], "f": [1, -1]})
    code, out, err = run(["run", "--scenario", write(tmp_path, data)], capsys)
    assert code == EXIT_SCHEMA and out == "" and "3 values" in err


@pytest.mark.parametrize(
    "patch",
    [
        {"queries": [{"type": "member", "args": {"gamble": "zz"}}]},
        {"queries": [{"type": "member", "args": {"gamble": [1, 2, 3]}}]},
        {"queries": [{"type": "gbr", "args": {"gamble": "f", "event": ["c"]}}]},
        {"queries": [{"type": "member", "args": {}}]},
        {"queries": [{"type": "teleport"}]},
        {"queries": [{"type": "decide", "args": {"criterion": "regret", "options": ["f"]}}]},
        {"operator": {"kind": "kappa9"}},
        {"generators": ["nope"]},
        {"extra": 1},
        {"tol": -1},
    ],
)
def test_schema_errors_exit_2(tmp_path, capsys, patch):
    code, out, _ = run(["run", "--scenario", write(tmp_path, dict(BASE, **patch))], capsys)
    assert code == EXIT_SCHEMA and out == ""


def test_schema_checked_before_any_query_runs(tmp_path, capsys):
    data = dict(BASE, queries=[{"type": "lower-prevision", "args": {"gamble": "f"}}, {"type": "member", "args": {"gamble": "zz"}}])
    code, out, _ = run(["run", "--scenario", write(tmp_path, data)], capsys)
    assert code == EXIT_SCHEMA and out == ""


def test_query_error_exits_1(tmp_path, capsys):
    # block generators must vanish outside their block; the other query still runs
    data = dict(
        BASE,
        queries=[
            {"type": "assemble", "args": {"gamble": "f", "partition": [["a"], ["b"]], "conditionals": [["g"], ["g"]]}},
            {"type": "lower-prevision", "args": {"gamble": "f"}},
        ],
    )
    code, out, _ = run(["run", "--scenario", write(tmp_path, data)], capsys)
    rep = json.loads(out)
    assert code == EXIT_QUERY
    assert [r["status"] for r in rep["records"]] == ["error", "ok"]
    assert "vanish" in rep["records"][0]["error"]


def test_numerical_error_exit_code(monkeypatch, tmp_path, capsys):
    from desirability import cli
    from desirability.gambles import NumericalError

    def boom(*args, **kwargs):
        raise NumericalError("simulated")

    monkeypatch.setattr(cli, "lower_prevision", boom)
    code, out, _ = run(["run", "--scenario", write(tmp_path, BASE)], capsys)
    assert code == EXIT_NUMERICAL
    assert json.loads(out)["records"][0]["status"] == "error"


def test_overrides_and_csv(capsys):
    code, out, _ = run(["run", "--scenario", "kappa3-previsions", "--format", "csv", "--tol", "1e-6", "--seed", "3"], capsys)
    assert code == EXIT_OK
    header, *rows = out.strip().splitlines()
    assert "result.value" in header.split(",") and len(rows) == 8


def test_plot(tmp_path, capsys):
    out = tmp_path / "p.svg"
    assert main(["plot", "--scenario", "kappa3-previsions", "--resolution", "40", "--mark", "a", "--out", str(out)]) == EXIT_OK
    svg = out.read_text()
    assert svg.startswith("<?xml") and "</svg>" in svg and ">a</text>" in svg
    assert main(["plot", "--scenario", "allais"]) == EXIT_SCHEMA


def test_demo(capsys):
    code, out, err = run(["demo", "conglomerability"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["details"]["witness"] == [-1.0, 1.0, -1.0, 1.0]
    assert "DIFFERS" not in err
    assert main(["demo", "nonexistent"]) == EXIT_SCHEMA


def test_jsonable_handles_numpy_and_infinities():
    import numpy as np

    out = jsonable({"a": np.float64(np.inf), "b": np.array([1, 2]), "c": np.bool_(True), "d": float("-inf")})
    assert out == {"a": "inf", "b": [1, 2], "c": True, "d": "-inf"}
    json.dumps(out, allow_nan=False)


def test_csv_flattening():
    text = to_csv([{"x": {"y": 1, "z": [1, 2]}, "w": "k"}])
    assert text.splitlines()[0] == "w,x.y,x.z"


def test_parse_rejects_both_sources():
    with pytest.raises(SchemaError):
        parse(dict(BASE, catalog="median-strict"))
    with pytest.raises(FileNotFoundError):
        load("no-such-scenario")


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "desirability.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip()
