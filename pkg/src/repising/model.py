"""Classical Ising energy model: sparse couplings and fields on a hardware graph.

Sign convention throughout: H = sum_{(i,j)} J_ij s_i s_j + sum_i h_i s_i,
so ferromagnetic bonds have J < 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from .graph import Edge, Graph, canonical_edge

#: Absolute tolerance for energy comparisons at the e_max = 1 scale.
ENERGY_TOL = 1e-9

SpinConfig = np.ndarray  # int8 vector of +1/-1 entries


def as_spins(values) -> SpinConfig:
    """Validate and convert a +1/-1 sequence to an int8 spin vector."""
    s = np.asarray(values, dtype=np.int8)
    if s.ndim != 1 or not np.all(np.abs(s) == 1):
        raise ValueError("spin configuration must be a 1-d vector of +1/-1")
    return s


def spins_from_bits(index: int, n: int) -> SpinConfig:
    """Spin vector for an enumeration index: bit i set means spin i is -1."""
    bits = (index >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int8)


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Couplings J on hardware-graph edges and fields h on vertices.

    Absent entries are exactly zero; entries with value 0.0 are dropped
    so the sparse storage is canonical. All magnitudes are bounded by
    e_max. Instances are immutable; energy evaluation is pure.
    """

    graph: Graph
    couplings: Mapping[Edge, float] = field(default_factory=dict)
    fields: Mapping[int, float] = field(default_factory=dict)
    e_max: float = 1.0

    def __post_init__(self) -> None:
        if self.e_max < 0:
            raise ValueError("e_max must be non-negative")
        couplings = {}
        for (u, v), j in self.couplings.items():
            e = canonical_edge(int(u), int(v))
            if e in couplings:
                raise ValueError(f"duplicate coupling on edge {e}")
            if e not in self.graph.edge_set:
                raise ValueError(f"coupling on non-edge {e}")
            if abs(j) > self.e_max * (1 + 1e-12):
                raise ValueError(f"|J{e}| = {abs(j)} exceeds e_max = {self.e_max}")
            if j != 0.0:
                couplings[e] = float(j)
        fields = {}
        for i, h in self.fields.items():
            i = int(i)
            if not 0 <= i < self.graph.vertex_count:
                raise ValueError(f"field on non-vertex {i}")
            if abs(h) > self.e_max * (1 + 1e-12):
                raise ValueError(f"|h_{i}| = {abs(h)} exceeds e_max = {self.e_max}")
            if h != 0.0:
                fields[i] = float(h)
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "fields", fields)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IsingModel):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.couplings == other.couplings
            and self.fields == other.fields
            and self.e_max == other.e_max
        )

    def coupling(self, u: int, v: int) -> float:
        return self.couplings.get(canonical_edge(u, v), 0.0)

    def field(self, i: int) -> float:
        return self.fields.get(i, 0.0)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(eu, ev, ew, h): all hardware edges (zero-coupling included) and dense fields."""
        n = self.graph.vertex_count
        edges = self.graph.edges
        eu = np.fromiter((e[0] for e in edges), dtype=np.int32, count=len(edges))
        ev = np.fromiter((e[1] for e in edges), dtype=np.int32, count=len(edges))
        ew = np.fromiter(
            (self.couplings.get(e, 0.0) for e in edges), dtype=np.float64, count=len(edges)
        )
        h = np.zeros(n, dtype=np.float64)
        for i, v in self.fields.items():
            h[i] = v
        return eu, ev, ew, h

    def to_dict(self) -> dict:
        """JSON-ready instance form; hardware edges keep explicit (possibly 0) J."""
        return {
            "vertices": self.graph.vertex_count,
            "edges": [[u, v, self.couplings.get((u, v), 0.0)] for u, v in self.graph.edges],
            "fields": [[i, h] for i, h in sorted(self.fields.items())],
            "e_max": self.e_max,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IsingModel":
        n = int(data["vertices"])
        edges = [(int(u), int(v)) for u, v, _ in data["edges"]]
        couplings = {
            canonical_edge(int(u), int(v)): float(j) for u, v, j in data["edges"] if j != 0.0
        }
        fields = {int(i): float(h) for i, h in data.get("fields", [])}
        return cls(Graph(n, tuple(edges)), couplings, fields, float(data.get("e_max", 1.0)))

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path) -> "IsingModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def energy(m: IsingModel, s: SpinConfig) -> float:
    """H(s) = sum_{(i,j)} J_ij s_i s_j + sum_i h_i s_i."""
    if len(s) != m.graph.vertex_count:
        raise ValueError(
            f"spin vector length {len(s)} != vertex count {m.graph.vertex_count}"
        )
    eu, ev, ew, h = m.arrays
    s = np.asarray(s, dtype=np.float64)
    return float(ew @ (s[eu] * s[ev]) + h @ s)


def add(m1: IsingModel, m2: IsingModel) -> IsingModel:
    """Termwise sum of two models on the same hardware graph.

    The resulting e_max is the maximum attained coupling/field magnitude.
    """
    if m1.graph != m2.graph:
        raise ValueError("cannot add models on different graphs")
    couplings = dict(m1.couplings)
    for e, j in m2.couplings.items():
        couplings[e] = couplings.get(e, 0.0) + j
    fields = dict(m1.fields)
    for i, h in m2.fields.items():
        fields[i] = fields.get(i, 0.0) + h
    attained = [abs(x) for x in couplings.values()] + [abs(x) for x in fields.values()]
    return IsingModel(m1.graph, couplings, fields, max(attained, default=0.0))


def scale(m: IsingModel, alpha: float) -> IsingModel:
    """Model with all couplings and fields multiplied by alpha."""
    return IsingModel(
        m.graph,
        {e: alpha * j for e, j in m.couplings.items()},
        {i: alpha * h for i, h in m.fields.items()},
        abs(alpha) * m.e_max,
    )


def make_ladder_instance(columns: int, antiferro_rung: int = 0) -> IsingModel:
    """Two ferromagnetic chains (J = -1) linked by one antiferromagnetic rung (J = +1).

    All other rungs are hardware edges with zero coupling; h = 0, e_max = 1.
    Vertex (column c, row r) has index 2*c + r.
    """
    from .graph import build_ladder

    if not 0 <= antiferro_rung < columns:
        raise ValueError(f"antiferro_rung {antiferro_rung} out of range for {columns} columns")
    g = build_ladder(columns)
    couplings: dict[Edge, float] = {}
    for c in range(columns - 1):
        for r in (0, 1):
            couplings[canonical_edge(2 * c + r, 2 * (c + 1) + r)] = -1.0
    couplings[(2 * antiferro_rung, 2 * antiferro_rung + 1)] = 1.0
    return IsingModel(g, couplings, {}, 1.0)
