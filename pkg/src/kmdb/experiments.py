"""Fixed synthetic suite and aggregate branch-count comparisons.

The suite is 50 power-law graphs of 100 x 100 vertices, 25 at density 0.2 and
25 at density 0.5. Each density comes with its own theta, picked so that a
pure-Python run of every instance finishes in seconds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .generate import POWERLAW, generate
from .graph import BipartiteGraph
from .solver import Algorithm, SolverConfig, Status, solve_optimized


@dataclass(frozen=True)
class SuiteSpec:
    n: int = 100
    densities: tuple[float, ...] = (0.2, 0.5)
    graphs_per_density: int = 25
    thetas: tuple[int, ...] = (13, 30)
    distribution: str = POWERLAW

    def __post_init__(self):
        if len(self.thetas) != len(self.densities):
            raise ValueError("one theta per density")


SUITE = SuiteSpec()


@dataclass(frozen=True)
class SuiteGraph:
    name: str
    density: float
    theta: int
    graph: BipartiteGraph = field(repr=False, compare=False)


@lru_cache(maxsize=4)
def suite_graphs(spec: SuiteSpec = SUITE) -> tuple[SuiteGraph, ...]:
    out = []
    for rho, theta in zip(spec.densities, spec.thetas):
        for seed in range(spec.graphs_per_density):
            g = generate(spec.n, spec.n, rho, spec.distribution, seed=seed)
            out.append(SuiteGraph(f"pl{spec.n}-r{rho}-s{seed}", rho, theta, g))
    return tuple(out)


@dataclass
class Tally:
    """Summed branch count; ``exact`` is False once any run hit its time limit."""

    branches: int = 0
    runs: int = 0
    timeouts: int = 0
    edges: list = field(default_factory=list)
    seconds: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.timeouts == 0

    def add(self, branches: int, status: Status, edges: int, seconds: float = 0.0) -> None:
        self.branches += branches
        self.runs += 1
        self.edges.append(edges)
        self.seconds.append(seconds)
        if status is Status.TIMEOUT_BEST_KNOWN:
            self.timeouts += 1


def tally(
    graphs: Iterable[SuiteGraph],
    ks: Iterable[int],
    algorithm: Algorithm = Algorithm.PIVOT,
    disable: tuple[str, ...] = (),
    threads: int = 1,
    time_limit: float | Sequence[float | None] | None = None,
) -> Tally:
    """Run every (graph, k) pair; ``time_limit`` may be one value or one per run."""
    ks = tuple(ks)
    t = Tally()
    runs = [(sg, k) for sg in graphs for k in ks]
    limits = list(time_limit) if isinstance(time_limit, Sequence) else [time_limit] * len(runs)
    if len(limits) != len(runs):
        raise ValueError(f"{len(limits)} time limits for {len(runs)} runs")
    for (sg, k), limit in zip(runs, limits):
        cfg = SolverConfig(k, sg.theta, algorithm=algorithm, threads=threads, time_limit=limit)
        sol, st = solve_optimized(sg.graph, cfg.without(*disable))
        t.add(st.branches, st.status, sol.edges if sol else 0, st.elapsed)
    return t


def at_most(small: Tally, large: Tally) -> bool | None:
    """Whether small.branches <= large.branches is established.

    A timed-out run contributes a lower bound on its true count, so a truncated
    ``large`` can still prove the inequality while a truncated ``small`` cannot.
    Returns None when the answer is not determined.
    """
    if small.exact and small.branches <= large.branches:
        return True
    if large.exact and small.branches > large.branches:
        return False
    return None
