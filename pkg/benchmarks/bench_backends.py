"""Compare the compiled and pure-Python search kernels.

Usage::

    python benchmarks/bench_backends.py [--repeat 3] [--json out.json]

Each workload is run on both backends; the counts must agree.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from edgematch import generate, kernels, oracles
from edgematch.euler import MultiGraph
from edgematch.reductions import hamilton, legs, sat


def _workloads():
    rng = random.Random(7)
    out = []

    f = sat.to_literal_matching(sat.enforce_e1n(sat.Cnf(4, ((1, -2), (2, 3, -4), (-1, 4), (-3, 2, 4)))))
    strip = sat.ipc_to_lt_strip(sat.lm_to_ipc(f))
    out.append((f"lt-strip count ({len(strip.tiles)} tiles)",
                lambda b, i=strip: oracles.count_strip_solutions(i, backend=b)))

    g = generate.cubic_digraph(rng, 12)
    while oracles.count_ham(g) == 0:
        g = generate.cubic_digraph(rng, 12)
    p, s, t = hamilton.ham_cycle_to_ham_path(g)
    sq = hamilton.ham_path_to_square_strip(p, s, t)
    out.append((f"square strip count ({len(sq.tiles)} tiles)",
                lambda b, i=sq: oracles.count_strip_solutions(i, backend=b)))

    gg = hamilton.one_in_three_to_ham_cycle(sat.Cnf(5, ((1, 2, 3), (3, 4, 5), (1, 4, 2)))).graph
    out.append((f"ham cycles, three clauses ({len(gg.vertices)} vertices)",
                lambda b, x=gg: oracles.count_ham(x, backend=b)))

    tri = MultiGraph.from_pairs([(0, 1), (1, 2), (2, 0), (0, 0), (1, 1), (2, 2), (0, 1), (1, 0)])
    leg, _c = legs.euler_to_leg_strip(tri, signed=False)
    out.append((f"leg strip count ({len(leg.tiles)} tiles)",
                lambda b, i=leg: oracles.count_strip_solutions(i, backend=b)))

    eg = MultiGraph.from_pairs([(0, 1), (1, 2), (2, 0), (0, 3), (3, 1), (1, 0), (2, 3), (3, 2), (0, 0),
                                (1, 3), (3, 0), (2, 1), (1, 2)])
    out.append((f"euler trails ({len(eg.edges)} edges)",
                lambda b, x=eg: oracles.count_euler_paths(x, backend=b)))
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", default=None, help="write results here")
    args = ap.parse_args(argv)

    names = list(kernels.backends())
    if "cython" not in names:
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)
    rows = []
    for title, fn in _workloads():
        row = {"workload": title}
        counts = set()
        for b in names:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                c = fn(b)
                best = min(best, time.perf_counter() - t0)
            counts.add(c)
            row[b] = best
            row["count"] = c
        if len(counts) != 1:
            print(f"backends disagree on {title}: {sorted(counts)}", file=sys.stderr)
            return 1
        rows.append(row)

    w = max(len(r["workload"]) for r in rows)
    head = f"{'workload':<{w}}  {'count':>14}" + "".join(f"  {b + ' s':>10}" for b in names)
    if "cython" in names:
        head += f"  {'speedup':>8}"
    print(head)
    for r in rows:
        line = f"{r['workload']:<{w}}  {r['count']:>14}" + "".join(f"  {r[b]:>10.4f}" for b in names)
        if "cython" in names:
            line += f"  {r['python'] / r['cython']:>7.1f}x"
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
