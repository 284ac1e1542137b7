#!/usr/bin/env python3
"""Branch-and-bound benchmark: numba kernels vs the pure-Python fallback.

Each backend runs in its own interpreter because the backend is fixed at
import time by KNS_DISABLE_NUMBA. Prints JSON (or writes it with --out).
"""

import argparse
import json
import os
import subprocess
import sys
import time

INSTANCES = [
    # n, k, t, s, not_t_intersecting
    (6, 2, 1, 3, True),
    (9, 2, 1, 4, True),
    (7, 3, 2, 3, True),
    (9, 2, 1, 6, True),
    (8, 2, 1, 2, False),
]

WORKER = r"""
import json, sys, time
from almostkneser import _accel
from almostkneser.core import Params
from almostkneser.search import SearchConfig, max_family

instances, repeats = json.loads(sys.argv[1]), int(sys.argv[2])
out = {"backend": _accel.backend_name(), "results": []}
# warm-up compiles (or loads cached) kernels
max_family(SearchConfig(Params(4, 2, 1, 1), require_not_t_intersecting=True))
for n, k, t, s, nti in instances:
    cfg = SearchConfig(Params(n, k, t, s), require_not_t_intersecting=nti,
                       vertex_cap=63, canonicalize=False)
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        res = max_family(cfg)
        times.append(time.perf_counter() - start)
    out["results"].append({
        "instance": [n, k, t, s, nti],
        "max_size": res.max_size,
        "nodes": res.stats["nodes"],
        "best_s": min(times),
        "mean_s": sum(times) / len(times),
    })
print(json.dumps(out))
"""


def run_backend(disable: bool, instances, repeats: int) -> dict:
    env = dict(os.environ)
    env["KNS_DISABLE_NUMBA"] = "1" if disable else "0"
    started = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(instances), str(repeats)],
        env=env, capture_output=True, text=True, check=True,
    )
    data = json.loads(proc.stdout)
    data["process_wall_s"] = time.perf_counter() - started
    return data


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="first two instances only")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    args = ap.parse_args()

    instances = INSTANCES[:2] if args.quick else INSTANCES
    numba_run = run_backend(False, instances, args.repeats)
    python_run = run_backend(True, instances, args.repeats)

    rows = []
    for a, b in zip(numba_run["results"], python_run["results"]):
        if (a["max_size"], a["nodes"]) != (b["max_size"], b["nodes"]):
            print(f"backends disagree on {a['instance']}", file=sys.stderr)
            return 1
        rows.append({
            "instance": a["instance"],
            "max_size": a["max_size"],
            "nodes": a["nodes"],
            "numba_s": a["best_s"],
            "python_s": b["best_s"],
            "speedup": b["best_s"] / a["best_s"] if a["best_s"] > 0 else None,
        })

    report = {
        "numba_backend": numba_run["backend"],
        "fallback_backend": python_run["backend"],
        "repeats": args.repeats,
        "results": rows,
    }
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
