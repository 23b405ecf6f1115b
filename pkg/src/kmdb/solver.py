"""Exact search for a maximum-edge k-defective biclique.

``solve_bb`` and ``solve_pivot`` run the bare binary-branching and
pivot-branching recursions from the root instance. ``solve_optimized`` wraps
either core with the heuristic seed, progressive thresholds, common-neighbour
reduction, ordering-based seeding, bound pruning and one-non-neighbour
pruning, each switchable through ``SolverConfig``.
"""

from __future__ import annotations

import dataclasses
import random
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from .bounds import BoundTriple, ThresholdPair, can_prune, upper_bounds
from .graph import BipartiteGraph, iter_bits
from .heuristic import greedy_initial
from .instance import BranchKind, SearchInstance
from .reduce import cn_reduce, initial_theta_u, one_non_neighbor_prune, ordering_instances, progressive_thresholds
from .solution import Solution


class Algorithm(Enum):
    BB = "bb"
    PIVOT = "pivot"
    BASELINE_RANDOM = "baseline"


class Status(Enum):
    OPTIMAL = "OPTIMAL"
    NO_SOLUTION = "NO_SOLUTION"
    TIMEOUT_BEST_KNOWN = "TIMEOUT_BEST_KNOWN"


TOGGLES = ("heuristic", "upper_bounds", "cn_reduce", "one_non_neighbor", "ordering", "progressive")

# CLI short names for the toggles
TOGGLE_ALIASES = {
    "heur": "heuristic",
    "ub": "upper_bounds",
    "cnred": "cn_reduce",
    "onn": "one_non_neighbor",
    "order": "ordering",
    "pb": "progressive",
}

PruneHook = Callable[[SearchInstance, BoundTriple, int, ThresholdPair], None]


@dataclass(frozen=True)
class SolverConfig:
    k: int
    theta: int
    algorithm: Algorithm = Algorithm.PIVOT
    heuristic: bool = True
    upper_bounds: bool = True
    cn_reduce: bool = True
    one_non_neighbor: bool = True
    ordering: bool = True
    progressive: bool = True
    threads: int = 1
    task_threshold: Optional[int] = None
    time_limit: Optional[float] = None
    swap_sides: bool = False
    seed: int = 0
    cn_fixpoint: bool = False
    prune_hook: Optional[PruneHook] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if not self.theta > self.k:
            raise ValueError("theta must be greater than k")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")

    def without(self, *names: str) -> "SolverConfig":
        names = [TOGGLE_ALIASES.get(n, n) for n in names]
        bad = [n for n in names if n not in TOGGLES]
        if bad:
            raise ValueError(f"unknown toggle(s): {', '.join(bad)}")
        return dataclasses.replace(self, **{n: False for n in names})

    def core(self, algorithm: Algorithm | None = None) -> "SolverConfig":
        """Same run parameters with every optimisation switched off."""
        cfg = self.without(*TOGGLES)
        if algorithm is not None:
            cfg = dataclasses.replace(cfg, algorithm=algorithm)
        return cfg

    @property
    def enabled(self) -> tuple[str, ...]:
        return tuple(t for t in TOGGLES if getattr(self, t))

    @property
    def max_tasks(self) -> int:
        return self.task_threshold if self.task_threshold is not None else 4 * self.threads


@dataclass
class SolverStats:
    branches: int = 0
    pruned_by_bounds: int = 0
    reduction_events: dict = field(default_factory=dict)
    rounds: int = 0
    elapsed: float = 0.0
    status: Status = Status.NO_SOLUTION
    heuristic_edges: int = 0

    def merge(self, other: "SolverStats") -> None:
        self.branches += other.branches
        self.pruned_by_bounds += other.pruned_by_bounds
        for key, n in other.reduction_events.items():
            self.reduction_events[key] = self.reduction_events.get(key, 0) + n

    def as_dict(self) -> dict:
        return {
            "branches": self.branches,
            "pruned_by_bounds": self.pruned_by_bounds,
            "reduction_events": dict(sorted(self.reduction_events.items())),
            "rounds": self.rounds,
            "elapsed": round(self.elapsed, 6),
            "status": self.status.value,
            "heuristic_edges": self.heuristic_edges,
        }


class _Timeout(Exception):
    pass


class _Register:
    """Best solution so far; readers may see a stale edge count."""

    def __init__(self):
        self.edges = 0
        self.solution: Solution | None = None
        self._lock = threading.Lock()

    def offer(self, edges: int, make: Callable[[], Solution]) -> bool:
        if edges <= self.edges:
            return False
        with self._lock:
            if edges <= self.edges:
                return False
            self.solution = make()
            self.edges = edges
            return True


class _Pool:
    """Thread pool with a global outstanding-task counter."""

    def __init__(self, threads: int, limit: int):
        self.limit = limit
        self.outstanding = 0
        self.errors: list[BaseException] = []
        self._cond = threading.Condition()
        self._ex = ThreadPoolExecutor(max_workers=threads, thread_name_prefix="kmdb")

    def can_fork(self) -> bool:
        return self.outstanding < self.limit

    def submit(self, fn, *args) -> None:
        with self._cond:
            self.outstanding += 1
        self._ex.submit(self._run, fn, args)

    def _run(self, fn, args) -> None:
        try:
            fn(*args)
        except BaseException as exc:  # surfaced by wait()
            with self._cond:
                self.errors.append(exc)
        finally:
            with self._cond:
                self.outstanding -= 1
                if self.outstanding == 0:
                    self._cond.notify_all()

    def wait(self) -> None:
        with self._cond:
            while self.outstanding:
                self._cond.wait()

    def close(self) -> None:
        self._ex.shutdown(wait=True)


class _Run:
    """State shared by every worker of one solve call."""

    def __init__(self, config: SolverConfig, deadline: float | None):
        self.config = config
        self.register = _Register()
        self.deadline = deadline
        self.timed_out = False
        self.stats = SolverStats()
        self.rng = random.Random(config.seed)
        self.pool: _Pool | None = None
        self._lock = threading.Lock()

    def search(self, inst: SearchInstance, thresholds: ThresholdPair) -> None:
        worker = _Search(self, thresholds)
        try:
            worker.node(inst)
        except _Timeout:
            self.timed_out = True
        finally:
            with self._lock:
                self.stats.merge(worker.stats)

    def spawn(self, inst: SearchInstance, thresholds: ThresholdPair) -> None:
        if self.pool is None:
            self.search(inst, thresholds)
        else:
            self.pool.submit(self.search, inst, thresholds)


class _Search:
    def __init__(self, run: _Run, thresholds: ThresholdPair):
        cfg = run.config
        self.run = run
        self.thresholds = thresholds
        self.theta = cfg.theta
        self.algorithm = cfg.algorithm
        self.use_bounds = cfg.upper_bounds
        self.use_onn = cfg.one_non_neighbor
        self.hook = cfg.prune_hook
        self.register = run.register
        self.deadline = run.deadline
        self.pool = run.pool
        self.stats = SolverStats()

    def node(self, inst: SearchInstance) -> None:
        self.stats.branches += 1
        if self.deadline is not None and (self.run.timed_out or time.monotonic() > self.deadline):
            raise _Timeout
        if not inst.C:
            a, b = inst.left_size, inst.right_size
            if a >= self.theta and b >= self.theta:
                e = a * b - inst.ne_s
                if e > self.register.edges:
                    left, right = inst.partial
                    self.register.offer(e, lambda: Solution(frozenset(left), frozenset(right), e))
            return
        if self.use_bounds:
            bounds = upper_bounds(inst)
            best = self.register.edges
            if can_prune(bounds, self.thresholds, best):
                self.stats.pruned_by_bounds += 1
                if self.hook is not None:
                    self.hook(inst, bounds, best, self.thresholds)
                return
        if self.algorithm is Algorithm.PIVOT:
            plan = inst.select_pivot_branching()
            if plan.kind is BranchKind.PIVOT_FAN:
                self._fan(inst, (plan.vertex,) + plan.fan)
                return
            u = plan.vertex
        elif self.algorithm is Algorithm.BB:
            u = inst.select_binary_branching_vertex()
        else:
            u = self.run.rng.choice(list(iter_bits(inst.C)))
        self._binary(inst, u)

    def _include(self, inst: SearchInstance, u: int) -> None:
        pool = self.pool
        if pool is not None and pool.can_fork():
            child = inst.clone()
            child.update_after_add(u)
            self.run.spawn(child, self.thresholds)
            return
        t = inst.update_after_add(u)
        self.node(inst)
        inst.rollback(t)

    def _binary(self, inst: SearchInstance, u: int) -> None:
        self._include(inst, u)
        t = inst.remove_candidate(u)
        if self.use_onn:
            one_non_neighbor_prune(inst, u, self.stats.reduction_events)
        self.node(inst)
        inst.rollback(t)

    def _fan(self, inst: SearchInstance, members: tuple[int, ...]) -> None:
        first = None
        for v in members:
            self._include(inst, v)
            t = inst.remove_candidate(v)
            if first is None:
                first = t
        inst.rollback(first)


def _rounds(work: BipartiteGraph, config: SolverConfig, register: _Register):
    theta = config.theta
    if not config.progressive:
        yield ThresholdPair(theta, theta)
        return
    tu = initial_theta_u(work, config.k)
    if tu <= theta:
        yield ThresholdPair(theta, theta)
        return
    prev = ThresholdPair(tu, theta)
    while True:
        nxt = progressive_thresholds(prev, register.edges, theta)
        if nxt is None:
            return
        yield nxt
        prev = nxt


def solve_optimized(g: BipartiteGraph, config: SolverConfig) -> tuple[Solution | None, SolverStats]:
    """Solve with every technique the config enables; returns (solution or None, stats)."""
    start = time.monotonic()
    deadline = None if config.time_limit is None else start + config.time_limit
    work = g.swapped() if config.swap_sides else g
    run = _Run(config, deadline)
    stats = run.stats
    events = stats.reduction_events
    k, theta = config.k, config.theta

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * work.n + 1000))
    if config.threads > 1:
        run.pool = _Pool(config.threads, config.max_tasks)
    try:
        if config.heuristic:
            seed = greedy_initial(work, k, theta)
            if seed is not None:
                run.register.offer(seed.edges, lambda: seed)
                stats.heuristic_edges = seed.edges
        for thresholds in _rounds(work, config, run.register):
            if run.timed_out:
                break
            stats.rounds += 1
            graph = work
            if config.cn_reduce:
                graph = cn_reduce(work, k, min(thresholds), fixpoint=config.cn_fixpoint, stats=events)
            if config.ordering:
                red = thresholds if config.cn_reduce else None
                for seed_inst, _excluded, u in ordering_instances(graph, k, red, stats=events):
                    if not graph.adj_left[u]:
                        continue
                    run.spawn(seed_inst, thresholds)
                    if run.timed_out:
                        break
            else:
                run.spawn(SearchInstance(graph, k), thresholds)
            if run.pool is not None:
                run.pool.wait()
        if run.pool is not None and run.pool.errors:
            raise run.pool.errors[0]
    finally:
        if run.pool is not None:
            run.pool.wait()
            run.pool.close()
        sys.setrecursionlimit(old_limit)

    sol = run.register.solution
    if sol is not None and config.swap_sides:
        sol = sol.swapped()
    if run.timed_out:
        stats.status = Status.TIMEOUT_BEST_KNOWN
    else:
        stats.status = Status.OPTIMAL if sol is not None else Status.NO_SOLUTION
    stats.elapsed = time.monotonic() - start
    return sol, stats


def solve_bb(g: BipartiteGraph, config: SolverConfig) -> tuple[Solution | None, SolverStats]:
    """Plain binary branching from the root instance, no optimisations."""
    return solve_optimized(g, config.core(Algorithm.BB))


def solve_pivot(g: BipartiteGraph, config: SolverConfig) -> tuple[Solution | None, SolverStats]:
    """Plain pivot-based branching from the root instance, no optimisations."""
    return solve_optimized(g, config.core(Algorithm.PIVOT))


def solve(g: BipartiteGraph, config: SolverConfig) -> tuple[Solution | None, SolverStats]:
    return solve_optimized(g, config)


# -- worst-case branching factors -------------------------------------------------


def branching_factor(k: int, variant: str = "alpha", tol: float = 1e-9) -> float:
    """Base of the exponential bound on the search-tree size.

    ``alpha``: binary branching, largest root of
    x^(2k+5) - 2x^(2k+4) + x^3 - x^2 + 1. ``beta``: pivot branching, largest
    root of x^(2k+5) - 2x^(2k+4) + x^(k+3) - 2x + 2. Both polynomials share the
    spurious root x = 1, so the bisection runs on the equivalent recurrence
    form 1 - sum(x^-a) over the branching vector, which is increasing on
    (1, 2) and has exactly one root there.
    """
    variant = variant.lower()
    if variant not in ("alpha", "beta"):
        raise ValueError("variant must be 'alpha' or 'beta'")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return (1 + 5 ** 0.5) / 2 if variant == "alpha" else 2 ** 0.5
    if variant == "alpha":
        terms = [(i, 1) for i in range(1, 2 * k + 2)] + [(2 * k + 3, 1), (2 * k + 4, 1)]
    else:
        terms = [(i, 1) for i in range(1, k + 2)] + [(2 * k + 4, 2)]

    def f(x: float) -> float:
        return 1.0 - sum(c * x ** -a for a, c in terms)

    lo, hi = 1.0, 2.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
