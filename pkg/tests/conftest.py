"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the package's solver kernels: they
enumerate configurations with plain Python arithmetic so solver tests have
an independent reference path.
"""

from __future__ import annotations

import numpy as np
import pytest

from repising.graph import Graph
from repising.model import IsingModel

#: Verdict lines collected by the acceptance tests; echoed after the run so
#: they survive pytest's output capture.
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


def oracle_energy(m: IsingModel, s) -> float:
    total = 0.0
    for (u, v), j in m.couplings.items():
        total += j * s[u] * s[v]
    for i, h in m.fields.items():
        total += h * s[i]
    return total


def oracle_ground(m: IsingModel, tol: float = 1e-9):
    """(min energy, count of optima within tol, one optimal config)."""
    n = m.graph.vertex_count
    best = np.inf
    best_cfg = None
    energies = []
    for bits in range(1 << n):
        s = [1 - 2 * ((bits >> i) & 1) for i in range(n)]
        e = oracle_energy(m, s)
        energies.append(e)
        if e < best:
            best = e
            best_cfg = s
    count = sum(e <= best + tol for e in energies)
    return best, count, np.array(best_cfg, dtype=np.int8)


def random_model(rng: np.random.Generator, n: int, edge_prob: float = 0.4,
                 grid: float | None = None) -> IsingModel:
    """Random instance with J, h uniform in [-1, 1]; optionally snapped to a
    fixed-point grid."""
    edges = tuple(
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_prob
    )
    g = Graph(n, edges)

    def draw():
        x = rng.uniform(-1.0, 1.0)
        return float(np.round(x / grid) * grid) if grid else float(x)

    couplings = {e: draw() for e in g.edges}
    fields = {i: draw() for i in range(n)}
    return IsingModel(g, couplings, fields, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20140207)
