"""Command-line front end: ``kmdb solve | oracle | gen | bench``.

Exit codes: 0 success (including NO_SOLUTION), 2 usage error, 3 timeout with
a best-known answer, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .generate import NORMAL, POWERLAW, generate
from .graph import BipartiteGraph, EdgeListError, load_edge_list, write_edge_list
from .oracle import OracleTooLarge, brute_force_mdb
from .solution import Solution
from .solver import TOGGLE_ALIASES, TOGGLES, Algorithm, SolverConfig, SolverStats, Status, solve_optimized

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TIMEOUT = 3
EXIT_IO = 4

BENCH_COLUMNS = (
    "graph", "k", "theta", "algo", "toggles", "repeat", "edges", "status",
    "elapsed_ms", "branches", "pruned_bounds", "reduction_events",
)


class UsageError(Exception):
    pass


def _disabled(spec: str | None) -> list[str]:
    if not spec:
        return []
    out = []
    for name in spec.split(","):
        name = name.strip()
        if not name:
            continue
        full = TOGGLE_ALIASES.get(name, name)
        if full not in TOGGLES:
            raise UsageError(f"unknown toggle {name!r}; choose from {', '.join(TOGGLE_ALIASES)}")
        out.append(full)
    return out


def _int_range(text: str) -> list[int]:
    """'3' -> [3], '1-4' -> [1, 2, 3, 4], '1,3,5' -> [1, 3, 5]."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if "-" in part.strip()[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None
    return out


def _load(path: str, one_based: bool) -> BipartiteGraph:
    if path == "-":
        return load_edge_list(sys.stdin, one_based=one_based)
    return load_edge_list(path, one_based=one_based)


def _config(args: argparse.Namespace, **extra) -> SolverConfig:
    try:
        cfg = SolverConfig(
            k=args.k,
            theta=args.theta,
            algorithm=Algorithm(args.algo),
            threads=args.threads,
            task_threshold=args.task_threshold,
            time_limit=args.time_limit,
            swap_sides=args.swap_sides,
            seed=args.seed,
            **extra,
        )
        return cfg.without(*_disabled(args.disable))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def report(
    g: BipartiteGraph,
    k: int,
    theta: int,
    sol: Solution | None,
    stats: SolverStats | None,
    status: Status,
    source: str,
) -> dict:
    """Report record; vertex ids are the labels used in the input file."""
    return {
        "source": source,
        "k": k,
        "theta": theta,
        "status": status.value,
        "edges": sol.edges if sol else 0,
        "left": [g.label(u) for u in sorted(sol.left)] if sol else [],
        "right": [g.label(v) for v in sorted(sol.right)] if sol else [],
        "stats": stats.as_dict() if stats is not None else None,
    }


def _emit(rec: dict, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(rec, sort_keys=True) + "\n")
        return
    out.write(f"k={rec['k']} theta={rec['theta']} status={rec['status']} edges={rec['edges']}\n")
    out.write("left: " + " ".join(map(str, rec["left"])) + "\n")
    out.write("right: " + " ".join(map(str, rec["right"])) + "\n")
    st = rec["stats"]
    if st:
        events = " ".join(f"{a}={b}" for a, b in st["reduction_events"].items())
        out.write(
            f"branches={st['branches']} pruned_bounds={st['pruned_by_bounds']} rounds={st['rounds']} "
            f"heuristic_edges={st['heuristic_edges']} elapsed={st['elapsed']:.3f}s\n"
        )
        if events:
            out.write(f"reductions: {events}\n")


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    cfg = _config(args)
    g = _load(args.graph, args.one_based)
    sol, stats = solve_optimized(g, cfg)
    _emit(report(g, cfg.k, cfg.theta, sol, stats, stats.status, cfg.algorithm.value), args.output, out)
    return EXIT_TIMEOUT if stats.status is Status.TIMEOUT_BEST_KNOWN else EXIT_OK


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    if args.k < 0:
        raise UsageError("k must be non-negative")
    if not args.theta > args.k:
        raise UsageError("theta must be greater than k")
    g = _load(args.graph, args.one_based)
    try:
        sol = brute_force_mdb(g, args.k, args.theta, max_side=args.max_side)
    except OracleTooLarge as exc:
        raise UsageError(f"graph too large for the oracle: {exc}") from None
    status = Status.OPTIMAL if sol else Status.NO_SOLUTION
    _emit(report(g, args.k, args.theta, sol, None, status, "oracle"), args.output, out)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    try:
        g = generate(args.n_left, args.n_right, args.density, args.distribution, args.seed, args.exponent)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_edge_list(g, args.out if args.out else out)
    return EXIT_OK


def _toggle_label(off: Sequence[str]) -> str:
    if not off:
        return "all"
    short = {v: k for k, v in TOGGLE_ALIASES.items()}
    if set(off) == set(TOGGLES):
        return "none"
    return "-" + "-".join(short[t] for t in off)


def bench_rows(
    graphs: Sequence[tuple[str, BipartiteGraph]],
    ks: Sequence[int],
    thetas: Sequence[int],
    algos: Sequence[Algorithm],
    ablations: Sequence[Sequence[str]],
    repeats: int = 1,
    threads: int = 1,
    time_limit: float | None = None,
):
    """Yield one CSV row dict per (graph, k, theta, algorithm, toggle set, repeat)."""
    for name, g in graphs:
        for k in ks:
            for theta in thetas:
                if theta <= k:
                    continue
                for algo in algos:
                    base = SolverConfig(k, theta, algorithm=algo, threads=threads, time_limit=time_limit)
                    for off in ablations:
                        cfg = base.without(*off)
                        for rep in range(repeats):
                            sol, st = solve_optimized(g, cfg)
                            yield {
                                "graph": name,
                                "k": k,
                                "theta": theta,
                                "algo": algo.value,
                                "toggles": _toggle_label(off),
                                "repeat": rep,
                                "edges": sol.edges if sol else 0,
                                "status": st.status.value,
                                "elapsed_ms": round(st.elapsed * 1000, 3),
                                "branches": st.branches,
                                "pruned_bounds": st.pruned_by_bounds,
                                "reduction_events": sum(st.reduction_events.values()),
                            }


def cmd_bench(args: argparse.Namespace, out: TextIO) -> int:
    graphs = [(Path(p).name if p != "-" else "stdin", _load(p, args.one_based)) for p in args.graphs]
    ks = _int_range(args.k)
    thetas = _int_range(args.theta)
    try:
        algos = [Algorithm(a) for a in args.algo.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ablations: list[list[str]] = [[]]
    for name in (args.ablations.split(",") if args.ablations else []):
        ablations.append(list(TOGGLES) if name == "core" else _disabled(name))
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else out
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in bench_rows(graphs, ks, thetas, algos, ablations, args.repeats, args.threads, args.time_limit):
            writer.writerow(row)
            fh.flush()
    finally:
        if fh is not out:
            fh.close()
    return EXIT_OK


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmdb", description="Maximum-edge k-defective biclique search.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_opts(sp, many=False):
        if many:
            sp.add_argument("graphs", nargs="+", help="edge-list files ('-' for stdin)")
        else:
            sp.add_argument("graph", help="edge-list file ('-' for stdin)")
        sp.add_argument("--one-based", action="store_true", help="vertex ids in the file start at 1")

    s = sub.add_parser("solve", help="exact search")
    graph_opts(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--theta", type=int, required=True)
    s.add_argument("--algo", choices=[a.value for a in Algorithm], default="pivot")
    s.add_argument("--threads", type=_positive, default=1)
    s.add_argument("--task-threshold", type=_positive, default=None)
    s.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    s.add_argument("--disable", default="", help="comma list of " + ",".join(TOGGLE_ALIASES))
    s.add_argument("--swap-sides", action="store_true")
    s.add_argument("--seed", type=int, default=0, help="rng seed for the random baseline")
    s.add_argument("--output", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exhaustive reference answer for small graphs")
    graph_opts(o)
    o.add_argument("--k", type=int, required=True)
    o.add_argument("--theta", type=int, required=True)
    o.add_argument("--max-side", type=int, default=20)
    o.add_argument("--output", choices=("text", "json"), default="text")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="synthetic bipartite graph")
    g.add_argument("--n-left", type=int, default=100)
    g.add_argument("--n-right", type=int, default=100)
    g.add_argument("--density", type=float, required=True)
    g.add_argument("--distribution", choices=(POWERLAW, NORMAL), default=POWERLAW)
    g.add_argument("--exponent", type=float, default=2.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", "-o", default=None)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="CSV of runs over k, theta, algorithms and ablations")
    graph_opts(b, many=True)
    b.add_argument("--k", default="1-3", help="e.g. 2, 1-3 or 1,3")
    b.add_argument("--theta", default="4")
    b.add_argument("--algo", default="bb,pivot")
    b.add_argument("--ablations", default="", help="toggles to disable one at a time; 'core' disables all")
    b.add_argument("--repeats", type=_positive, default=1)
    b.add_argument("--threads", type=_positive, default=1)
    b.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    b.add_argument("--out", "-o", default=None)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"kmdb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EdgeListError as exc:
        print(f"kmdb: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"kmdb: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
