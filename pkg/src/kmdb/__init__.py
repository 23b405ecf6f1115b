"""Exact maximum-edge k-defective biclique search."""

from .bounds import BoundTriple, ThresholdPair, can_prune, upper_bounds
from .graph import LEFT, RIGHT, BipartiteGraph, EdgeListError, Side, VertexRef, load_edge_list, write_edge_list
from .heuristic import greedy_initial
from .instance import BranchKind, BranchPlan, ContractError, SearchInstance
from .oracle import OracleTooLarge, brute_force_mdb, naive_mdb
from .solution import Solution, validate
from .solver import (
    Algorithm,
    SolverConfig,
    SolverStats,
    Status,
    branching_factor,
    solve,
    solve_bb,
    solve_optimized,
    solve_pivot,
)

__all__ = [
    "Algorithm", "BipartiteGraph", "BoundTriple", "BranchKind", "BranchPlan", "ContractError",
    "EdgeListError", "LEFT", "OracleTooLarge", "RIGHT", "SearchInstance", "Side", "Solution",
    "SolverConfig", "SolverStats", "Status", "ThresholdPair", "VertexRef", "branching_factor",
    "brute_force_mdb", "can_prune", "greedy_initial", "load_edge_list", "naive_mdb", "solve",
    "solve_bb", "solve_optimized", "solve_pivot", "upper_bounds", "validate", "write_edge_list",
]
