"""Undirected graphs on dense integer vertices, topology builders, Cartesian product."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    """Return the edge as an ordered (min, max) pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices 0..vertex_count-1.

    Edges are stored canonically as sorted (min, max) pairs so that
    iteration order is deterministic. Instances are immutable and safe
    to share across threads.
    """

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        canon = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) outside vertex range")
            canon.append(canonical_edge(u, v))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(n)) for n in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_set

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int8)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree(v) for v in range(self.vertex_count)))

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for u in self.neighbors(stack.pop()):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.vertex_count


def graph_from_edges(vertex_count: int, edges: Iterable[Iterable[int]]) -> Graph:
    return Graph(vertex_count, tuple((int(u), int(v)) for u, v in edges))


def build_path(n: int) -> Graph:
    """Path graph: vertices 0..n-1, edges (i, i+1)."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def build_grid(rows: int, cols: int) -> Graph:
    """Rook-move nearest-neighbor grid; vertex (r, c) has index r*cols + c."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    return cartesian_product(build_path(rows), build_path(cols))


def build_complete(n: int) -> Graph:
    """Complete graph on n vertices."""
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def build_ladder(columns: int) -> Graph:
    """Two parallel chains of `columns` vertices plus one rung per column.

    Vertex (column c, row r) has index 2*c + r; identical to
    cartesian_product(build_path(columns), build_path(2)).
    """
    if columns < 1:
        raise ValueError("ladder needs at least one column")
    return cartesian_product(build_path(columns), build_path(2))


def product_index(i: int, k: int, k_total: int) -> int:
    """Flat index of product vertex (i, k) with block size k_total."""
    return i * k_total + k


def product_vertex(idx: int, k_total: int) -> tuple[int, int]:
    """Inverse of product_index."""
    return divmod(idx, k_total)


def cartesian_product(g: Graph, f: Graph) -> Graph:
    """Cartesian product G square F.

    Product vertex (i, k) maps to index i*|V_F| + k. Edges connect
    ((i,k),(j,k)) for (i,j) in E_G and ((i,k),(i,l)) for (k,l) in E_F,
    so Adj(product) = Adj(G) kron I_F + I_G kron Adj(F).
    """
    kf = f.vertex_count
    edges: list[Edge] = []
    for i, j in g.edges:
        for k in range(kf):
            edges.append((product_index(i, k, kf), product_index(j, k, kf)))
    for i in range(g.vertex_count):
        for k, l in f.edges:
            edges.append((product_index(i, k, kf), product_index(i, l, kf)))
    return Graph(g.vertex_count * kf, tuple(edges))
