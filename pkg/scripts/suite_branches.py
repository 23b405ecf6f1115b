"""Per-instance branch counts on the fixed 100x100 suite (pivot vs binary, ablations).

    python3 scripts/suite_branches.py --ks 2,3 --time-limit 30 --out suite.csv
"""

import argparse
import csv
import sys
import time

from kmdb import Algorithm, SolverConfig, solve_optimized
from kmdb.experiments import suite_graphs

VARIANTS = {
    "pivot": (Algorithm.PIVOT, ()),
    "bb": (Algorithm.BB, ()),
    "pivot-heur": (Algorithm.PIVOT, ("heuristic",)),
    "pivot-ub": (Algorithm.PIVOT, ("upper_bounds",)),
    "pivot-cnred": (Algorithm.PIVOT, ("cn_reduce",)),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ks", default="2,3")
    ap.add_argument("--variants", default=",".join(VARIANTS))
    ap.add_argument("--time-limit", type=float, default=30.0)
    ap.add_argument("--limit", type=int, default=None, help="only the first N graphs of each density")
    ap.add_argument("--out", default=None)
    args = ap.parse_args(argv)
    ks = [int(x) for x in args.ks.split(",")]
    graphs = suite_graphs()
    if args.limit:
        per = {}
        graphs = [g for g in graphs if per.setdefault(g.density, []).append(g) or len(per[g.density]) <= args.limit]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["graph", "density", "theta", "k", "variant", "edges", "status", "branches", "seconds"])
    for sg in graphs:
        for k in ks:
            for name in args.variants.split(","):
                algo, off = VARIANTS[name]
                cfg = SolverConfig(k, sg.theta, algorithm=algo, time_limit=args.time_limit).without(*off)
                t0 = time.monotonic()
                sol, st = solve_optimized(sg.graph, cfg)
                w.writerow([sg.name, sg.density, sg.theta, k, name, sol.edges if sol else 0,
                            st.status.value, st.branches, round(time.monotonic() - t0, 2)])
                fh.flush()


if __name__ == "__main__":
    main()
