"""Command-line front end: ``desir run``, ``desir plot`` and ``desir demo``.

Exit codes: 0 when every query succeeded (an unknown verdict is a result,
not an error), 1 when a query failed, 2 for scenario schema problems and 3
for numerical failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from enum import Enum

import numpy as np

from . import __version__
from .consistency import avoids_partial_loss, avoids_sure_loss, is_coherent
from .credal import credal_intersection, is_empty
from .decide import CRITERIA, decide
from .demos import DEMOS, run_demo
from .gambles import DimensionError, NumericalError, UnsupportedSpecError, classify
from .operators import GeneratedSet, Kind
from .plot import render_svg
from .previsions import gbr_conditional, is_precise, lower_prevision, marginal_extension_prevision, upper_prevision
from .scenario import Scenario, SchemaError, load
from .structure import (
    ConditionalFamily,
    ConditionalSet,
    assembled_member,
    conditional_member,
    conglomerability_check,
    marginal_extension_set,
    marginal_member,
)

log = logging.getLogger("desirability")

EXIT_OK, EXIT_QUERY, EXIT_SCHEMA, EXIT_NUMERICAL = 0, 1, 2, 3


def jsonable(x):
    """Plain JSON types; infinities become strings."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if np.isnan(x):
            return "nan"
        if np.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, Enum):
        return str(x.value)
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return x


# query handlers -----------------------------------------------------------------

_REQUIRED = {
    "member": ("gamble",),
    "classify": ("gamble",),
    "lower-prevision": ("gamble",),
    "upper-prevision": ("gamble",),
    "gbr": ("gamble", "event"),
    "marginal": ("gamble", "partition"),
    "conditional": ("gamble", "event"),
    "assemble": ("gamble", "partition"),
    "conglomerable": ("partition",),
    "marginal-extension": ("gamble", "partition"),
    "decide": ("criterion", "options"),
    "demo": ("name",),
}


def _membership(m) -> dict:
    return {"verdict": str(m.verdict), "witness": m.witness}


def _family(sc: Scenario, args: dict, partition) -> ConditionalFamily:
    D = sc.desir_set()
    cond = args.get("conditionals")
    if cond is None:
        return ConditionalFamily.from_set(D, partition)
    if len(cond) != len(partition):
        raise SchemaError("one conditional generator list per block is required")
    sets = [GeneratedSet([sc.gamble(g) for g in names], sc.spec, sc.n) for names in cond]
    return ConditionalFamily(partition, sets)


def _resolve(sc: Scenario, q) -> dict:
    """Check arguments and echo them with gamble names expanded."""
    args = q.args
    missing = [k for k in _REQUIRED.get(q.type, ()) if k not in args]
    if missing:
        raise SchemaError(f"{q.type}: missing argument {missing[0]!r}")
    echo = dict(args)
    if "gamble" in args:
        echo["gamble_values"] = sc.gamble(args["gamble"]).tolist()
    if "event" in args:
        sc.event(args["event"])
    if "partition" in args:
        sc.partition(args["partition"])
    if q.type == "decide":
        if args["criterion"] not in CRITERIA:
            raise SchemaError(f"unknown criterion {args['criterion']!r}")
        echo["option_values"] = [sc.gamble(o).tolist() for o in args["options"]]
    if q.type == "demo" and args["name"] not in DEMOS:
        raise SchemaError(f"unknown demo {args['name']!r}")
    for key in ("marginal",):
        for g in args.get(key, []) or []:
            sc.gamble(g)
    for names in args.get("conditionals", []) or []:
        for g in names:
            sc.gamble(g)
    return echo


def run_query(sc: Scenario, q) -> dict:
    D = sc.desir_set()
    a = q.args
    tol, seed = sc.tol, sc.seed
    t = q.type
    if t == "member":
        return _membership(D.member(sc.gamble(a["gamble"])))
    if t == "classify":
        return {"class": classify(sc.gamble(a["gamble"])).value}
    if t == "apl":
        return avoids_partial_loss(D).to_dict()
    if t == "asl":
        return avoids_sure_loss(D).to_dict()
    if t == "coherent":
        return is_coherent(D, int(a.get("trials", 200)), seed).to_dict()
    if t == "lower-prevision":
        return lower_prevision(D, sc.gamble(a["gamble"]), tol).to_dict()
    if t == "upper-prevision":
        return upper_prevision(D, sc.gamble(a["gamble"]), tol).to_dict()
    if t == "precise":
        return is_precise(D, int(a.get("samples", 10_000)), seed, tol).to_dict()
    if t == "gbr":
        return gbr_conditional(D, sc.gamble(a["gamble"]), sc.event(a["event"]), tol).to_dict()
    if t == "marginal":
        return _membership(marginal_member(D, sc.gamble(a["gamble"]), sc.partition(a["partition"])))
    if t == "conditional":
        return _membership(conditional_member(D, sc.gamble(a["gamble"]), sc.event(a["event"])))
    if t == "assemble":
        P = sc.partition(a["partition"])
        return _membership(assembled_member(_family(sc, a, P), sc.gamble(a["gamble"])))
    if t == "conglomerable":
        P = sc.partition(a["partition"])
        return conglomerability_check(D, _family(sc, a, P), trials=int(a.get("trials", 2000)), seed=seed).to_dict()
    if t == "marginal-extension":
        P = sc.partition(a["partition"])
        fam = _family(sc, a, P)
        marg = GeneratedSet([sc.gamble(g) for g in a["marginal"]], sc.spec, sc.n) if "marginal" in a else D
        f = sc.gamble(a["gamble"])
        E = marginal_extension_set(marg, fam, sc.spec)
        out = {"member": _membership(E.member(f))}
        if sc.spec.kind in (Kind.KAPPA1, Kind.KAPPA4):
            out["lower"] = marginal_extension_prevision(marg, fam.per_block, P, sc.spec, f, tol).to_dict()
        return out
    if t == "credal":
        C = credal_intersection(D)
        return {"polytope": C.to_dict(), "emptiness": is_empty(C, tol).to_dict()}
    if t == "vertices":
        C = credal_intersection(D)
        return {"vertices": [v.to_dict() for v in C.vertices()]}
    if t == "decide":
        J = np.array([sc.gamble(o) for o in a["options"]])
        rep = decide(D, J, a["criterion"], tol)
        out = rep.to_dict()
        out["optimal_names"] = [a["options"][i] if isinstance(a["options"][i], str) else i for i in rep.optimal]
        return out
    if t == "demo":
        return run_demo(a["name"])
    raise SchemaError(f"unsupported query type {t!r}")


def run_scenario(sc: Scenario) -> tuple[dict, int]:
    echoes = [_resolve(sc, q) for q in sc.queries]
    records, code = [], EXIT_OK
    for i, (q, echo) in enumerate(zip(sc.queries, echoes)):
        rec = {"index": i, "type": q.type, "args": echo}
        try:
            rec["result"] = run_query(sc, q)
            rec["status"] = "ok"
        except NumericalError as exc:
            rec["status"], rec["error"] = "error", f"numerical failure: {exc}"
            code = EXIT_NUMERICAL
        except (UnsupportedSpecError, DimensionError, ValueError, KeyError) as exc:
            if isinstance(exc, SchemaError):
                raise
            rec["status"], rec["error"] = "error", f"{type(exc).__name__}: {exc}"
            code = max(code, EXIT_QUERY) if code != EXIT_NUMERICAL else code
        records.append(rec)
    report = {"scenario": sc.echo(), "version": __version__, "records": records}
    return jsonable(report), code


# output -------------------------------------------------------------------------


def to_json(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _flatten(prefix: str, x, out: dict):
    if isinstance(x, dict):
        for k in sorted(x):
            _flatten(f"{prefix}.{k}" if prefix else str(k), x[k], out)
    elif isinstance(x, list) and x and all(isinstance(v, (int, float, str, bool)) or v is None for v in x):
        out[prefix] = json.dumps(x)
    elif isinstance(x, list):
        for i, v in enumerate(x):
            _flatten(f"{prefix}.{i}", v, out)
    else:
        out[prefix] = x


def to_csv(rows: list[dict]) -> str:
    flat = []
    for r in rows:
        d: dict = {}
        _flatten("", r, d)
        flat.append(d)
    columns = sorted({k for d in flat for k in d})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for d in flat:
        w.writerow(d)
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands -----------------------------------------------------------------------


def _load(args) -> Scenario:
    sc = load(args.scenario)
    if args.tol is not None:
        sc.tol = args.tol
    if args.seed is not None:
        sc.seed = args.seed
    return sc


def cmd_run(args) -> int:
    try:
        sc = _load(args)
        report, code = run_scenario(sc)
    except (SchemaError, FileNotFoundError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    if args.format == "csv":
        _emit(to_csv(report["records"]), args.out)
    else:
        _emit(to_json(report), args.out)
    return code


def cmd_plot(args) -> int:
    try:
        sc = _load(args)
        marks = {name: sc.gamble(name) for name in (args.mark or [])}
        svg = render_svg(sc.desir_set(), args.resolution, tuple(sc.space[:2]) if sc.n == 2 else ("w1", "w2"), marks, sc.name)
    except (SchemaError, FileNotFoundError, DimensionError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _emit(svg, args.out)
    return EXIT_OK


def cmd_demo(args) -> int:
    if args.name not in DEMOS:
        print(f"unknown demo {args.name!r}; choose from {', '.join(sorted(DEMOS))}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        report = jsonable(run_demo(args.name))
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.format == "csv":
        _emit(to_csv(report["comparison"]), args.out)
    else:
        _emit(to_json(report), args.out)
    table = report["comparison"]
    width = max(len(r["quantity"]) for r in table)
    for r in table:
        mark = "ok" if r["agrees"] else "DIFFERS"
        print(f"{r['quantity']:<{width}}  reference={r['reference']!s:<24} computed={r['computed']!s:<24} {mark}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, default=None, help="override the scenario tolerance")
    common.add_argument("--seed", type=int, default=None, help="override the scenario seed")

    p = argparse.ArgumentParser(prog="desir", description="Sets of desirable gambles: membership, prices, decisions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run the queries of a scenario")
    r.add_argument("--scenario", required=True, help="scenario path or bundled scenario name")
    r.set_defaults(func=cmd_run)

    pl = sub.add_parser("plot", parents=[common], help="draw a two-outcome set as SVG")
    pl.add_argument("--scenario", required=True)
    pl.add_argument("--resolution", type=int, default=300)
    pl.add_argument("--mark", action="append", help="gamble name to mark (repeatable)")
    pl.set_defaults(func=cmd_plot)

    d = sub.add_parser("demo", parents=[common], help="run a built-in demonstration")
    d.add_argument("name", help=", ".join(sorted(DEMOS)))
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    level = os.environ.get("DESIR_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
