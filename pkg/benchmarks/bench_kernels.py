"""Compare the compiled and pure-Python kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]
"""
from __future__ import annotations

import argparse
import json
import statistics
import time
from itertools import combinations

from tightham._kernels import compiled_backend, python_backend
from tightham.generators import gen_random
from tightham.hypergraph import ThreeGraph


def _time(fn, repeat):
    out = None
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        samples.append(time.perf_counter() - t)
    return statistics.median(samples), out


def blocked(n: int) -> ThreeGraph:
    # complete on 1..n-1, vertex 0 only in triples of {0,1,2,3}: no tight
    # Hamilton cycle, but every dead end is found late
    edges = list(combinations(range(1, n), 3)) + [(0, 1, 2), (0, 1, 3), (0, 2, 3)]
    return ThreeGraph(n, edges)


def cases():
    g_ham = gen_random(14, 0.5, seed=3)
    g_none = blocked(14)
    g_abs = gen_random(60, 0.5, seed=1)
    g_purge = gen_random(60, 0.3, seed=2)
    return [
        ("hamilton_cycle n=14 p=0.5", lambda b: b.hamilton_cycle(g_ham)),
        ("hamilton_cycle n=14 blocked", lambda b: b.hamilton_cycle(g_none)),
        ("count_absorbers n=60 x10", lambda b: [b.count_absorbers(g_abs, v) for v in range(10)]),
        ("purge_removed n=60 tau=20", lambda b: b.purge_removed(g_purge, 20.0)),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for name, fn in cases():
        t_py, r_py = _time(lambda: fn(python_backend), args.repeat)
        row = {"case": name, "python_s": t_py, "compiled_s": None, "speedup": None, "agree": None}
        if compiled_backend is not None:
            t_c, r_c = _time(lambda: fn(compiled_backend), args.repeat)
            row.update(compiled_s=t_c, speedup=t_py / t_c if t_c else None, agree=r_py == r_c)
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    if compiled_backend is None:
        print("compiled backend unavailable; timing the fallback only")
    print(f"{'case':34s} {'python':>10s} {'compiled':>10s} {'speedup':>8s} agree")
    for r in rows:
        c = "-" if r["compiled_s"] is None else f"{r['compiled_s']:.4f}"
        s = "-" if r["speedup"] is None else f"{r['speedup']:.1f}x"
        print(f"{r['case']:34s} {r['python_s']:10.4f} {c:>10s} {s:>8s} {r['agree']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
