"""Command-line front end: ``kns {check,construct,eval,search,canon,verify}``.

Exit codes: 0 success/verified, 1 property failure, 2 input error,
3 resource limit (refused or budget exhausted).

Defaults can be overridden by environment variables prefixed ``KNS_``
(e.g. ``KNS_NODE_LIMIT``, ``KNS_TIME_LIMIT``, ``KNS_VERTEX_CAP``,
``KNS_SEED``); explicit flags win over both.

CSV schemas
  verify lemmas        lemma,n,k,t,s,extra,outcome
  verify thm3          t,s,n,max_size,classes,matched_cases,unmatched,exhausted,nodes,status
  verify constructions id,t,s,n,predicted_size,size,s_almost,t_intersecting,outcome
  verify properties    property,trials,qualifying,violations,outcome
  verify all           suite column plus the union of the above
  eval (sweep)         n,k,t,s[,x],value
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import itertools
import json
import os
import platform
import random
import sys
import time
from pathlib import Path

from . import __version__, _accel
from .constructions import THM3_CASES, applicable_thm3_cases, build, thm3_family
from .core import Family, FamilyFormatError, ParameterError, load_family
from .formulas import LEMMAS, SweepGrid, eval_f, eval_g, eval_h, hm_threshold, sweep_all
from .predicates import (
    Outcome,
    check_lemma32_bounds,
    check_lemma33_bound,
    check_prop31_bound,
    covering_number,
    is_s_almost_t_intersecting,
    is_t_intersecting,
    kneser_edge_check,
)
from .sampling import DEFAULT_SEED, random_permutation, random_s_almost, random_subset_mask
from .search import (
    SearchConfig,
    SearchRefused,
    canonicalize,
    check_lemma41,
    max_family,
    theorem3_grid,
    verify_theorem3,
)
from .search.engine import DEFAULT_NODE_LIMIT, DEFAULT_VERTEX_CAP, ROOT_MODES
from .core import Params, apply_permutation

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _env(name: str, default, cast=str):
    raw = os.environ.get(f"KNS_{name}")
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"error: KNS_{name}={raw!r} is not a valid {cast.__name__}") from None


def _int_list(text: str) -> tuple[int, ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return tuple(out)


# output helpers -------------------------------------------------------------


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_output(path: str | None, text: str, args, started: float) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    out = Path(path)
    out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    write_manifest(out, args, started)


def write_manifest(out: Path, args, started: float) -> Path:
    config = {k: v for k, v in vars(args).items() if k != "func"}
    manifest = {
        "command_line": sys.argv,
        "config": json.loads(json.dumps(config, default=str)),
        "versions": {
            "almostkneser": __version__,
            "python": platform.python_version(),
            "backend": _accel.backend_name(),
        },
        "wall_time": time.perf_counter() - started,
        "digests": {out.name: _sha256(out)},
    }
    mpath = out.with_name(out.name + ".manifest.json")
    mpath.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return mpath


def _csv_text(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, restval="", extrasaction="ignore")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# check ----------------------------------------------------------------------


def cmd_check(args) -> int:
    started = time.perf_counter()
    fam = load_family(args.family)
    t, s = args.t, args.s
    almost, report = is_s_almost_t_intersecting(fam, t, s)
    out = {
        "n": fam.n,
        "k": fam.k,
        "size": len(fam),
        "t": t,
        "s": s,
        "t_intersecting": is_t_intersecting(fam, t),
        "s_almost_t_intersecting": almost,
        "kneser_max_degree_ok": kneser_edge_check(fam, t, s),
        "defect_report": report.to_json_obj(),
    }
    if len(fam) and t <= fam.k:
        out["covering"] = covering_number(fam, t, witness_cap=args.witness_cap).to_json_obj()
    else:
        out["covering"] = None
    out["bounds"] = {
        "prop31_empty_restriction": check_prop31_bound(fam, t, s).value,
        "lemma32": check_lemma32_bounds(fam, t, s).value,
        "lemma33": check_lemma33_bound(fam, t, s).value,
        "lemma41": check_lemma41(fam, t, s).value,
    }
    _write_output(args.json_out, json.dumps(out, indent=2), args, started)
    violated = any(v == Outcome.VIOLATED.value for v in out["bounds"].values())
    return EXIT_OK if almost and not violated else EXIT_FAIL


# construct ------------------------------------------------------------------


def cmd_construct(args) -> int:
    started = time.perf_counter()
    nc = build(args.id, args.n, args.k, args.t, args.s, args.seed)
    obj = nc.to_json_obj()
    obj["seed"] = args.seed
    _write_output(args.json_out, json.dumps(obj, indent=2), args, started)
    checks = obj["checks"]
    return EXIT_OK if not checks.get("materialized") or checks["claims_hold"] else EXIT_FAIL


# eval -----------------------------------------------------------------------

_EVAL_ARITY = {"f": ("n", "k", "t", "s", "x"), "g": ("n", "k", "t", "s", "x"), "h": ("n", "k", "t", "s")}


def _eval_one(which: str, vals: dict) -> int:
    n, k, t, s = vals["n"], vals["k"], vals["t"], vals["s"]
    if which == "f":
        return eval_f(n, k, t, s, vals["x"])
    if which == "g":
        if vals["x"] < t:
            print(f"warning: g outside x >= t at {vals}", file=sys.stderr)
        return eval_g(n, k, t, s, vals["x"])
    if k < t + 1 or n < hm_threshold(k, t, s):
        print(f"warning: h hypothesis (k >= t+1, n >= 2k-t+s) fails at {vals}", file=sys.stderr)
    return eval_h(n, k, t, s, strict=False)


def cmd_eval(args) -> int:
    started = time.perf_counter()
    names = _EVAL_ARITY[args.which]
    if len(args.params) != len(names):
        print(f"error: eval {args.which} takes {' '.join(names)}", file=sys.stderr)
        return EXIT_INPUT
    ranges = []
    sweep = False
    for name, raw in zip(names, args.params):
        if ":" in raw or "," in raw:
            sweep = True
        try:
            ranges.append(_int_list(raw))
        except ValueError:
            print(f"error: {name}={raw!r} is not an integer or range", file=sys.stderr)
            return EXIT_INPUT
    if not sweep:
        vals = dict(zip(names, (r[0] for r in ranges)))
        _write_output(args.out, str(_eval_one(args.which, vals)), args, started)
        return EXIT_OK
    rows = []
    for combo in itertools.product(*ranges):
        vals = dict(zip(names, combo))
        try:
            vals["value"] = _eval_one(args.which, vals)
        except ParameterError as exc:
            print(f"warning: {exc}", file=sys.stderr)
            vals["value"] = ""
        rows.append(vals)
    _write_output(args.out, _csv_text(rows, list(names) + ["value"]), args, started)
    return EXIT_OK


# search / canon ---------------------------------------------------------------


def cmd_search(args) -> int:
    started = time.perf_counter()
    cfg = SearchConfig(
        Params(args.n, args.k, args.t, args.s),
        require_not_t_intersecting=args.not_t_intersecting,
        collect_all_extremal=args.all_extremal,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
        vertex_cap=args.vertex_cap,
        root=args.root,
    )
    res = max_family(cfg)
    obj = {"params": cfg.params.as_dict(), "not_t_intersecting": args.not_t_intersecting,
           "root": args.root, **res.to_json_obj()}
    _write_output(args.json_out, json.dumps(obj, indent=2), args, started)
    return EXIT_OK if res.exhausted else EXIT_LIMIT


def cmd_canon(args) -> int:
    started = time.perf_counter()
    fam = load_family(args.family)
    form = canonicalize(fam)
    obj = {"canonical_form": str(form), "representative": form.decode().to_json_obj()}
    _write_output(args.json_out, json.dumps(obj, indent=2), args, started)
    return EXIT_OK


# verify ---------------------------------------------------------------------


def _suite_lemmas(args):
    grid = SweepGrid(args.t_values, args.k_offsets, args.s_values, args.n_offsets)
    rep = sweep_all(grid, args.lemmas)
    rows = [r.as_dict() for r in rep.rows]
    fields = ["lemma", "n", "k", "t", "s", "extra", "outcome"]
    return rows, fields, bool(rep.failures)


def _suite_thm3(args):
    rows = []
    failed = False
    limited = False
    for t, s, n, feasible in theorem3_grid(args.t_max, args.s_max, args.n_extra, args.vertex_cap):
        if not feasible:
            rows.append({"t": t, "s": s, "n": n, "status": "skipped"})
            continue
        v = verify_theorem3(t, s, n, node_limit=args.node_limit, time_limit=args.time_limit,
                            vertex_cap=args.vertex_cap)
        row = v.csv_row()
        if v.unmatched:
            row["status"] = "unmatched"
            failed = True
        elif not v.exhausted:
            row["status"] = "limit"
            limited = True
        else:
            row["status"] = "verified"
        rows.append(row)
    fields = ["t", "s", "n", "max_size", "classes", "matched_cases", "unmatched",
              "exhausted", "nodes", "status"]
    return rows, fields, failed or limited


def _construction_row(nc, t, s) -> dict:
    c = nc.check()
    return {
        "id": nc.id.value,
        "t": t,
        "s": s,
        "n": nc.params.n,
        "predicted_size": nc.predicted_size,
        "size": c.get("size", ""),
        "s_almost": c.get("s_almost_t_intersecting", ""),
        "t_intersecting": c.get("t_intersecting", ""),
        "outcome": "holds" if c.get("claims_hold") else "violated",
    }


def _suite_constructions(args):
    rows = []
    if args.fixture:
        fam = load_family(args.fixture)
        expected = build(args.id, None, None, args.t, args.s)
        almost = is_s_almost_t_intersecting(fam, args.t, args.s)[0]
        t_int = is_t_intersecting(fam, args.t)
        ok = almost and len(fam) == expected.predicted_size
        if expected.claims_not_t_intersecting:
            ok = ok and not t_int
        if expected.family is not None and fam.support().bit_count() <= 12:
            ok = ok and canonicalize(fam) == canonicalize(expected.family)
        rows.append({
            "id": f"fixture:{args.id.upper()}", "t": args.t, "s": args.s, "n": fam.n,
            "predicted_size": expected.predicted_size, "size": len(fam),
            "s_almost": almost, "t_intersecting": t_int,
            "outcome": "holds" if ok else "violated",
        })
    else:
        for t in range(1, args.t_max + 1):
            for s in range(1, args.s_max + 1):
                for case in THM3_CASES:
                    if case in applicable_thm3_cases(t, s):
                        rows.append(_construction_row(thm3_family(case, t, s), t, s))
            rows.append(_construction_row(build("EX51", None, None, t, 1), t, 1))
            rows.append(_construction_row(build("EX52", None, None, t, 3), t, 3))
            for s in range(1, args.s_max + 1):
                rows.append(_construction_row(build("EX53", None, None, t, s), t, s))
                for k in range(t + 1, t + 3):
                    n = max(hm_threshold(k, t, s), 2 * k)
                    if n <= 12:
                        rows.append(_construction_row(build("HM", n, k, t, s), t, s))
                rows.append(_construction_row(build("STAR", 2 * t + 4, t + 2, t, s), t, s))
    fields = ["id", "t", "s", "n", "predicted_size", "size", "s_almost", "t_intersecting", "outcome"]
    return rows, fields, any(r["outcome"] != "holds" for r in rows)


def property_harness(seed: int, trials: int) -> list[dict]:
    """Randomized predicate and bound checks; one summary row per property."""
    rng = random.Random(seed)
    rows = []

    def summarize(name, outcomes):
        qual = sum(o is not Outcome.SKIPPED for o in outcomes)
        bad = sum(o is Outcome.VIOLATED for o in outcomes)
        rows.append({"property": name, "trials": len(outcomes), "qualifying": qual,
                     "violations": bad, "outcome": "violated" if bad else "holds"})

    outs = []
    for _ in range(trials):
        n = rng.randint(3, 10)
        k = rng.randint(1, min(4, n))
        t = rng.randint(1, k)
        s = rng.randint(0, 4)
        f = random_s_almost(n, k, t, rng.randint(0, 6), rng, max_size=rng.randint(0, 15))
        agree = kneser_edge_check(f, t, s) == is_s_almost_t_intersecting(f, t, s)[0]
        g = apply_permutation(f, random_permutation(n, rng))
        inv = (is_s_almost_t_intersecting(f, t, s)[0] == is_s_almost_t_intersecting(g, t, s)[0]
               and is_t_intersecting(f, t) == is_t_intersecting(g, t))
        outs.append(Outcome.HOLDS if agree and inv else Outcome.VIOLATED)
    summarize("kneser_cross_oracle_and_invariance", outs)

    outs = []
    for _ in range(trials):
        t = rng.choice([1, 2])
        n, s = rng.randint(t + 3, 9), rng.randint(1, 4)
        f = random_s_almost(n, t + 1, t, s, rng, max_size=rng.randint(2, 20))
        outs.append(check_lemma32_bounds(f, t, s))
    summarize("lemma32", outs)

    outs = []
    for _ in range(trials):
        t = rng.choice([1, 1, 2])
        k = t + rng.choice([1, 2])
        n, s = rng.randint(2 * k, 10), rng.randint(1, 3)
        f = random_s_almost(n, k, t, s, rng, max_size=rng.randint(3, 14))
        outs.append(check_lemma33_bound(f, t, s))
    summarize("lemma33", outs)

    outs = []
    for _ in range(trials):
        t, k = rng.choice([(1, 2), (1, 2), (2, 3)])
        n, s = rng.randint((t + 1) * (k - t + 1) ** 2, 12), rng.randint(1, 3)
        f = random_s_almost(n, k, t, s, rng, max_size=rng.randint(3, 25))
        outs.append(check_prop31_bound(f, t, s, random_subset_mask(n, rng, max_size=2)))
    summarize("prop31", outs)

    outs = []
    for _ in range(max(1, trials // 4)):
        t = 1
        s = rng.randint(1, 3)
        n = rng.randint(6 + s, 9)
        f = random_s_almost(n, 3, t, s, rng)
        outs.append(check_lemma41(f, t, s))
    summarize("lemma41", outs)
    return rows


def _suite_properties(args):
    rows = property_harness(args.seed, args.trials)
    fields = ["property", "trials", "qualifying", "violations", "outcome"]
    return rows, fields, any(r["violations"] for r in rows)


_SUITES = {
    "lemmas": _suite_lemmas,
    "constructions": _suite_constructions,
    "thm3": _suite_thm3,
    "properties": _suite_properties,
}


def cmd_verify(args) -> int:
    started = time.perf_counter()
    if args.suite == "all":
        names = ["lemmas", "constructions", "thm3", "properties"]
    else:
        names = [args.suite]
    all_rows: list[dict] = []
    fields: list[str] = ["suite"]
    failed = False
    for name in names:
        rows, fs, bad = _SUITES[name](args)
        failed |= bad
        for r in rows:
            r["suite"] = name
        all_rows.extend(rows)
        fields.extend(f for f in fs if f not in fields)
        print(f"{name}: {'FAIL' if bad else 'ok'} ({len(rows)} rows)", file=sys.stderr)
    if len(names) == 1:
        fields = fields[1:]
    _write_output(args.csv_out, _csv_text(all_rows, fields), args, started)
    return EXIT_FAIL if failed else EXIT_OK


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kns",
        description="s-almost t-intersecting families: predicates, bounds, constructions, search.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="test a family file against the predicates and bounds")
    c.add_argument("family", help="family JSON file ({n, k, members})")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--witness-cap", type=int, default=_env("WITNESS_CAP", 1000, int))
    c.add_argument("--json-out")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", help="materialize a named construction")
    c.add_argument("id", help="STAR, HM, EX51, EX52, EX53 or THM3_I..THM3_VII")
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--s", type=int, default=1)
    c.add_argument("--seed", type=int, default=_env("SEED", None, int),
                   help="seed for the free choices of the HM-type family")
    c.add_argument("--json-out")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("eval", help="evaluate f, g or h exactly; ranges a:b give a CSV sweep")
    c.add_argument("which", choices=sorted(_EVAL_ARITY))
    c.add_argument("params", nargs="+", help="n k t s [x]; each an integer, a:b or a,b,c")
    c.add_argument("--out")
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("search", help="exact maximum-family search")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--not-t-intersecting", action="store_true")
    c.add_argument("--all-extremal", action="store_true")
    c.add_argument("--root", choices=ROOT_MODES, default=_env("ROOT", "none"))
    c.add_argument("--node-limit", type=int, default=_env("NODE_LIMIT", DEFAULT_NODE_LIMIT, int))
    c.add_argument("--time-limit", type=float, default=_env("TIME_LIMIT", None, float))
    c.add_argument("--vertex-cap", type=int, default=_env("VERTEX_CAP", DEFAULT_VERTEX_CAP, int))
    c.add_argument("--json-out")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("canon", help="canonical form of a family file")
    c.add_argument("family")
    c.add_argument("--json-out")
    c.set_defaults(func=cmd_canon)

    c = sub.add_parser("verify", help="run verification suites and emit CSV")
    c.add_argument("suite", choices=["lemmas", "thm3", "constructions", "properties", "all"])
    c.add_argument("--csv-out")
    g = c.add_argument_group("lemmas grid")
    g.add_argument("--lemmas", type=lambda x: tuple(x.split(",")), default=LEMMAS)
    g.add_argument("--t-values", type=_int_list, default=(1, 2, 3))
    g.add_argument("--k-offsets", type=_int_list, default=(2, 3, 4, 5, 6),
                   help="values of k - t")
    g.add_argument("--s-values", type=_int_list, default=(1, 2, 3, 4))
    g.add_argument("--n-offsets", type=_int_list, default=(0, 1, 7),
                   help="offsets from each lemma's minimal n; negatives give skipped rows")
    g = c.add_argument_group("thm3 / constructions grid")
    g.add_argument("--t-max", type=int, default=2)
    g.add_argument("--s-max", type=int, default=4)
    g.add_argument("--n-extra", type=int, default=2, help="n runs over t+s+2 .. t+s+2+N")
    g.add_argument("--node-limit", type=int, default=_env("NODE_LIMIT", DEFAULT_NODE_LIMIT, int))
    g.add_argument("--time-limit", type=float, default=_env("TIME_LIMIT", None, float))
    g.add_argument("--vertex-cap", type=int, default=_env("VERTEX_CAP", DEFAULT_VERTEX_CAP, int))
    g.add_argument("--fixture", help="family file to check against construction --id")
    g.add_argument("--id", default="EX51")
    g.add_argument("--t", type=int, default=1)
    g.add_argument("--s", type=int, default=1)
    g = c.add_argument_group("properties")
    g.add_argument("--seed", type=int, default=_env("SEED", DEFAULT_SEED, int))
    g.add_argument("--trials", type=int, default=_env("TRIALS", 200, int))
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FamilyFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ParameterError as exc:
        msg = str(exc)
        if "limit" in msg or "exceeds" in msg:
            print(f"refused: {msg}", file=sys.stderr)
            return EXIT_LIMIT
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
