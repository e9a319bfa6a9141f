"""Exact ground-state solvers: exhaustive enumeration, frontier dynamic
programming over a vertex elimination order, and a heuristic annealer used
only as a sanity bound."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..errors import CapacityError
from ..graph import Graph
from ..model import ENERGY_TOL, IsingModel, SpinConfig, energy, spins_from_bits

BRUTE_MAX_VERTICES = 24
DEFAULT_MAX_WIDTH = 22


@dataclass
class GroundResult:
    config: SpinConfig
    value: float
    solver_id: str
    degeneracy: int | None = None
    exact: bool = True
    second_gap: float | None = None
    stats: dict = field(default_factory=dict)


def solve_brute(m: IsingModel, tol: float = ENERGY_TOL) -> GroundResult:
    """Exhaustive enumeration; also reports the exact degeneracy count."""
    n = m.graph.vertex_count
    if n > BRUTE_MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds brute-force guard {BRUTE_MAX_VERTICES}")
    if n == 0:
        return GroundResult(np.zeros(0, np.int8), 0.0, "brute", degeneracy=1)
    eu, ev, ew, h = m.arrays
    start = time.perf_counter()
    value, index, degeneracy, gap = kernels.active().brute(n, eu, ev, ew, h, tol)
    wall = time.perf_counter() - start
    return GroundResult(
        spins_from_bits(index, n),
        float(value),
        "brute",
        degeneracy=int(degeneracy),
        second_gap=float(gap),
        stats={"states_processed": 1 << n, "wall_time": wall},
    )


def frontier_width(graph: Graph, order: list[int]) -> int:
    """Peak boundary size (table bits) of the sweep for this order."""
    return _simulate(graph, order)[0]


def _simulate(graph: Graph, order: list[int]):
    """Walk the elimination order, tracking boundary slots and releases.

    Returns (width, events) where events is a list of
    ("attach", v, processed-neighbor slots) and
    ("release", v, slot, boundary_after) entries.
    """
    n = graph.vertex_count
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the vertices")
    processed = [False] * n
    rem = [graph.degree(v) for v in range(n)]
    slot_of: dict[int, int] = {}
    boundary: list[int] = []
    events = []
    width = 0
    for v in order:
        attach_slots = [(slot_of[u], u) for u in graph.neighbors(v) if processed[u]]
        events.append(("attach", v, attach_slots))
        slot_of[v] = len(boundary)
        boundary.append(v)
        processed[v] = True
        for u in graph.neighbors(v):
            rem[u] -= 1
        width = max(width, len(boundary))
        releasable = sorted(
            (slot_of[u] for u in boundary if rem[u] == 0), reverse=True
        )
        for j in releasable:
            u = boundary.pop(j)
            del slot_of[u]
            for w in boundary[j:]:
                slot_of[w] -= 1
            events.append(("release", u, j, tuple(boundary)))
    return width, events


def bfs_order(graph: Graph) -> list[int]:
    """Breadth-first order from a minimum-degree root (per component)."""
    n = graph.vertex_count
    seen = [False] * n
    order: list[int] = []
    by_degree = sorted(range(n), key=graph.degree)
    for root in by_degree:
        if seen[root]:
            continue
        queue = [root]
        seen[root] = True
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in graph.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return order


def default_order(graph: Graph, max_width: int = DEFAULT_MAX_WIDTH) -> list[int]:
    """Identity order (natural for block-major product indices), falling back
    to BFS from a min-degree root when that is narrower."""
    identity = list(range(graph.vertex_count))
    w_id = frontier_width(graph, identity)
    if w_id <= max_width:
        return identity
    bfs = bfs_order(graph)
    return bfs if frontier_width(graph, bfs) < w_id else identity


def solve_frontier(
    m: IsingModel,
    order: list[int] | None = None,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> GroundResult:
    """Exact minimum by sweeping vertices in `order`, memoizing the best
    partial energy per assignment of the current boundary."""
    graph = m.graph
    n = graph.vertex_count
    if n == 0:
        return GroundResult(np.zeros(0, np.int8), 0.0, "frontier")
    if order is None:
        order = default_order(graph, max_width)
    width, events = _simulate(graph, order)
    if width > max_width:
        raise CapacityError(f"frontier width {width} exceeds limit {max_width}")

    ker = kernels.active()
    start = time.perf_counter()
    table = np.zeros(1, dtype=np.float64)
    records = []
    states = 0
    for ev in events:
        if ev[0] == "attach":
            _, v, attach_slots = ev
            slots = np.fromiter((s for s, _ in attach_slots), np.int32, len(attach_slots))
            weights = np.fromiter(
                (m.coupling(u, v) for _, u in attach_slots), np.float64, len(attach_slots)
            )
            table = ker.attach(table, slots, weights, m.field(v))
            states += table.size
        else:
            _, u, j, boundary_after = ev
            table, choices = ker.release(table, j)
            records.append((u, boundary_after, choices))
    value = float(table[0])

    spins = np.zeros(n, dtype=np.int8)
    for u, boundary_after, choices in reversed(records):
        bits = 0
        for i, w in enumerate(boundary_after):
            if spins[w] == -1:
                bits |= 1 << i
        spins[u] = -1 if choices[bits] else 1
    wall = time.perf_counter() - start
    return GroundResult(
        spins,
        value,
        "frontier",
        stats={"states_processed": states, "width": width, "wall_time": wall},
    )


def solve_anneal(
    m: IsingModel, sweeps: int = 200, restarts: int = 8, seed: int = 0
) -> GroundResult:
    """Simulated annealing; heuristic only, never acceptance-grade.

    The returned value is an upper bound on the exact minimum.
    """
    n = m.graph.vertex_count
    rng = np.random.default_rng(seed)
    eu, ev, ew, h = m.arrays
    nbrs: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for e in range(len(ew)):
        nbrs[eu[e]].append((int(ev[e]), float(ew[e])))
        nbrs[ev[e]].append((int(eu[e]), float(ew[e])))
    t_hot = 2.0 * max(m.e_max, 1e-12)
    t_cold = 0.02 * max(m.e_max, 1e-12)
    temps = np.geomspace(t_hot, t_cold, sweeps)
    best_value = np.inf
    best_config = np.ones(n, dtype=np.int8)
    start = time.perf_counter()
    for _ in range(restarts):
        s = rng.choice(np.array([-1, 1], dtype=np.int8), size=n)
        e_cur = energy(m, s)
        for t in temps:
            for v in range(n):
                local = h[v] + sum(w * s[u] for u, w in nbrs[v])
                delta = -2.0 * s[v] * local
                if delta <= 0 or rng.random() < np.exp(-delta / t):
                    s[v] = -s[v]
                    e_cur += delta
        e_cur = energy(m, s)  # re-evaluate to shed float drift
        if e_cur < best_value:
            best_value = e_cur
            best_config = s.copy()
    wall = time.perf_counter() - start
    return GroundResult(
        best_config,
        float(best_value),
        "anneal",
        exact=False,
        stats={"sweeps": sweeps, "restarts": restarts, "wall_time": wall},
    )


def auto_solve(m: IsingModel, max_width: int = DEFAULT_MAX_WIDTH) -> GroundResult:
    """Brute force for small instances, else frontier DP if a narrow order
    exists, else branch and bound via the MAX-2-SAT reduction."""
    n = m.graph.vertex_count
    if n <= 20:
        return solve_brute(m)
    try:
        return solve_frontier(m, max_width=max_width)
    except CapacityError:
        from .maxsat import solve_via_maxsat

        return solve_via_maxsat(m)
