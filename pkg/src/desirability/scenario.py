"""Scenario files: a possibility space, named gambles, a set of desirable
gambles and a list of queries, all in JSON.

    {
      "space": ["w1", "w2"],
      "gambles": {"g1": [-1, 1], "f": [-2, 3]},
      "operator": {"kind": "kappa3", "params": {}},
      "generators": ["g1"],            # or "catalog": "median-strict"
      "queries": [{"type": "lower-prevision", "args": {"gamble": "f"}}],
      "tol": 1e-9,
      "seed": 0
    }

Gamble arguments are names from ``gambles`` or literal value lists. Events
and partition blocks are lists of outcome labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .catalog import CATALOG, CatalogSet
from .gambles import DimensionError, Partition
from .operators import (
    ClosureSpec,
    DesirSet,
    GeneratedSet,
    PriceFunctional,
    UtilityFn,
    kappa1,
    kappa2,
    kappa3,
    kappa4,
    neg_limit,
    prevision_induced,
    utility_warp,
)


class SchemaError(ValueError):
    """The scenario does not match the expected layout."""


QUERY_TYPES = (
    "member",
    "classify",
    "apl",
    "asl",
    "coherent",
    "lower-prevision",
    "upper-prevision",
    "precise",
    "gbr",
    "marginal",
    "conditional",
    "assemble",
    "conglomerable",
    "marginal-extension",
    "credal",
    "vertices",
    "decide",
    "demo",
)

_TOP_LEVEL = {"space", "gambles", "operator", "generators", "catalog", "queries", "tol", "seed", "name", "description"}


@dataclass
class Query:
    type: str
    args: dict


@dataclass
class Scenario:
    name: str
    space: list[str]
    gambles: dict[str, np.ndarray]
    operator: dict
    spec: ClosureSpec
    generators: list[str] | None
    catalog: str | None
    queries: list[Query]
    tol: float = 1e-9
    seed: int = 0
    _set: DesirSet | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.space)

    def desir_set(self) -> DesirSet:
        if self._set is None:
            if self.catalog is not None:
                self._set = CatalogSet(self.catalog, self.n)
            else:
                G = np.array([self.gambles[g] for g in self.generators]).reshape(len(self.generators), self.n)
                self._set = GeneratedSet(G, self.spec, self.n)
        return self._set

    def gamble(self, ref) -> np.ndarray:
        if isinstance(ref, str):
            if ref not in self.gambles:
                raise SchemaError(f"unknown gamble {ref!r}")
            return self.gambles[ref]
        return _vector(ref, self.n, "gamble")

    def event(self, labels) -> np.ndarray:
        if not isinstance(labels, list) or not labels:
            raise SchemaError("an event is a nonempty list of outcome labels")
        unknown = [x for x in labels if x not in self.space]
        if unknown:
            raise SchemaError(f"unknown outcome label {unknown[0]!r}")
        return np.array([w in labels for w in self.space])

    def partition(self, blocks) -> Partition:
        if not isinstance(blocks, list) or not blocks:
            raise SchemaError("a partition is a nonempty list of label lists")
        try:
            return Partition(tuple(self.event(b) for b in blocks))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc

    def echo(self) -> dict:
        return {
            "name": self.name,
            "space": self.space,
            "operator": self.spec.to_dict(),
            "set": {"catalog": self.catalog} if self.catalog else {"generators": self.generators},
            "tol": self.tol,
            "seed": self.seed,
        }


def _vector(values, n: int, what: str) -> np.ndarray:
    if not isinstance(values, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise SchemaError(f"{what} must be a list of numbers")
    if len(values) != n:
        raise SchemaError(f"{what} has {len(values)} values but the space has {n} outcomes")
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{what} has non-finite values")
    return arr


def spec_from_dict(op: dict, n: int) -> ClosureSpec:
    if not isinstance(op, dict) or "kind" not in op:
        raise SchemaError("operator needs a kind")
    kind = op["kind"]
    params = dict(op.get("params", {}))
    tolerances = {k: float(params.pop(k)) for k in ("lp_tol", "strict_margin") if k in params}
    try:
        if kind == "kappa1":
            spec = kappa1()
        elif kind == "kappa2":
            spec = kappa2(int(params.pop("max_multiplicity", 64)))
        elif kind == "kappa3":
            spec = kappa3()
        elif kind == "kappa4":
            spec = kappa4()
        elif kind == "utility-warp":
            u = params.pop("utility")
            spec = utility_warp(UtilityFn(u["kind"], float(u.get("param", 1.0))))
        elif kind == "prevision-induced":
            fn = params.pop("functional")
            weights = fn["weights"]
            if fn["kind"] == "linear":
                spec = prevision_induced(PriceFunctional.linear(weights))
            elif fn["kind"] == "owa":
                spec = prevision_induced(PriceFunctional.owa(weights))
            else:
                raise SchemaError(f"unknown functional kind {fn['kind']!r}")
            if len(weights) != n:
                raise SchemaError("functional weights must match the space size")
        elif kind == "neg-limit":
            spec = neg_limit(int(params.pop("k")))
        else:
            raise SchemaError(f"unknown operator kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad operator parameters: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"bad operator parameters: {exc}") from exc
    if params:
        raise SchemaError(f"unexpected operator parameters {sorted(params)}")
    return spec.with_tolerances(**{k: v for k, v in tolerances.items()}) if tolerances else spec


def parse(data: dict, name: str = "scenario") -> Scenario:
    if not isinstance(data, dict):
        raise SchemaError("scenario must be a JSON object")
    extra = set(data) - _TOP_LEVEL
    if extra:
        raise SchemaError(f"unknown fields {sorted(extra)}")
    space = data.get("space")
    if not isinstance(space, list) or not space or not all(isinstance(s, str) for s in space):
        raise SchemaError("space must be a nonempty list of labels")
    if len(set(space)) != len(space):
        raise SchemaError("outcome labels must be distinct")
    n = len(space)
    raw = data.get("gambles", {})
    if not isinstance(raw, dict):
        raise SchemaError("gambles must map names to value lists")
    gambles = {k: _vector(v, n, f"gamble {k!r}") for k, v in raw.items()}
    has_gen, has_cat = "generators" in data, "catalog" in data
    if has_gen == has_cat:
        raise SchemaError("give exactly one of generators or catalog")
    generators = catalog = None
    if has_cat:
        catalog = data["catalog"]
        if catalog not in CATALOG:
            raise SchemaError(f"unknown catalog set {catalog!r}")
        entry = CATALOG[catalog]
        if entry.n is not None and entry.n != n:
            raise SchemaError(f"catalog set {catalog} needs {entry.n} outcomes")
        spec = entry.spec if "operator" not in data else spec_from_dict(data["operator"], n)
    else:
        generators = data["generators"]
        if not isinstance(generators, list) or not all(isinstance(g, str) for g in generators):
            raise SchemaError("generators must be a list of gamble names")
        missing = [g for g in generators if g not in gambles]
        if missing:
            raise SchemaError(f"unknown generator {missing[0]!r}")
        spec = spec_from_dict(data.get("operator", {}), n)
    tol = data.get("tol", 1e-9)
    seed = data.get("seed", 0)
    if not isinstance(tol, (int, float)) or not tol > 0:
        raise SchemaError("tol must be a positive number")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise SchemaError("seed must be an integer")
    queries = []
    for i, q in enumerate(data.get("queries", [])):
        if not isinstance(q, dict) or q.get("type") not in QUERY_TYPES:
            raise SchemaError(f"query {i}: type must be one of {', '.join(QUERY_TYPES)}")
        args = q.get("args", {})
        if not isinstance(args, dict):
            raise SchemaError(f"query {i}: args must be an object")
        queries.append(Query(q["type"], args))
    sc = Scenario(data.get("name", name), list(space), gambles, data.get("operator", {}), spec, generators, catalog, queries, float(tol), seed)
    try:
        sc.desir_set()
    except DimensionError as exc:
        raise SchemaError(str(exc)) from exc
    return sc


def bundled_names() -> list[str]:
    root = resources.files("desirability") / "scenarios"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def locate(path_or_name: str) -> Path:
    """A filesystem path, or the name of a bundled scenario."""
    p = Path(path_or_name)
    if p.exists():
        return p
    name = path_or_name if path_or_name.endswith(".json") else path_or_name + ".json"
    bundled = resources.files("desirability") / "scenarios" / name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no scenario file or bundled scenario named {path_or_name!r}")


def load(path_or_name: str) -> Scenario:
    path = locate(path_or_name)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return parse(data, path.stem)
