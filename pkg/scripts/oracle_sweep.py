"""Compare every solver variant against brute force on random small graphs.

    python3 scripts/oracle_sweep.py --graphs 2000 --max-side 6 --seed 1
"""

import argparse
import random
import time

from kmdb import Algorithm, BipartiteGraph, SolverConfig, brute_force_mdb, solve_optimized
from kmdb.solver import TOGGLES


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graphs", type=int, default=1000)
    ap.add_argument("--max-side", type=int, default=6)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    bad = 0
    t0 = time.monotonic()
    for i in range(args.graphs):
        nl, nr = rng.randint(1, args.max_side), rng.randint(1, args.max_side)
        rho = rng.uniform(0.1, 0.9)
        g = BipartiteGraph.from_edges(nl, nr, [(u, v) for u in range(nl) for v in range(nr) if rng.random() < rho])
        k = rng.randint(0, args.max_k)
        theta = rng.randint(k + 1, k + 3)
        want = brute_force_mdb(g, k, theta)
        want = want.edges if want else 0
        for algo in Algorithm:
            off = [t for t in TOGGLES if rng.random() < 0.5]
            sol, _ = solve_optimized(g, SolverConfig(k, theta, algorithm=algo, seed=i).without(*off))
            got = sol.edges if sol else 0
            if got != want:
                bad += 1
                print(f"mismatch graph={i} k={k} theta={theta} algo={algo.value} off={off}: {got} != {want}")
    print(f"{args.graphs} graphs, {bad} mismatches, {time.monotonic() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
