"""Exact ground-state solvers and the weighted MAX-2-SAT interop path."""

from .exact import (
    BRUTE_MAX_VERTICES,
    DEFAULT_MAX_WIDTH,
    GroundResult,
    auto_solve,
    bfs_order,
    default_order,
    frontier_width,
    solve_anneal,
    solve_brute,
    solve_frontier,
)
from .maxsat import (
    DEFAULT_SCALE,
    BnbResult,
    MaxSatInstance,
    assignment_from_spins,
    objective,
    qubo_to_max2sat,
    solve_bnb,
    solve_via_maxsat,
    spins_from_assignment,
)
from .wcnf import format_wcnf, parse_wcnf, read_wcnf, write_wcnf

__all__ = [
    "BRUTE_MAX_VERTICES",
    "DEFAULT_MAX_WIDTH",
    "DEFAULT_SCALE",
    "BnbResult",
    "GroundResult",
    "MaxSatInstance",
    "assignment_from_spins",
    "auto_solve",
    "bfs_order",
    "default_order",
    "format_wcnf",
    "frontier_width",
    "objective",
    "parse_wcnf",
    "qubo_to_max2sat",
    "read_wcnf",
    "solve_anneal",
    "solve_bnb",
    "solve_brute",
    "solve_frontier",
    "solve_via_maxsat",
    "spins_from_assignment",
    "write_wcnf",
]
