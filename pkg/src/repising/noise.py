"""Seeded random perturbations of couplings and fields on the hardware graph.

Every trial owns a counter-based random stream keyed by (master_seed,
trial_index), and draws are consumed in canonical edge-rank order, so the
perturbation for a trial never depends on thread count or execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Collection

import numpy as np

from .graph import Edge
from .model import IsingModel

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class NoiseSpec:
    """Distribution of the per-term error epsilon.

    eps_max is the half-width for the uniform distribution and the standard
    deviation for the gaussian one. perturb_fields toggles on-site errors;
    perturb_penalty_links toggles errors on encoding-graph (penalty) edges.
    """

    eps_max: float
    distribution: str = "uniform"
    perturb_fields: bool = False
    perturb_penalty_links: bool = True

    def __post_init__(self) -> None:
        if self.eps_max < 0:
            raise ValueError("eps_max must be non-negative")
        if self.distribution not in ("uniform", "gaussian"):
            raise ValueError(f"unknown distribution {self.distribution!r}")


@dataclass(frozen=True)
class TrialSeed:
    """Identifies one Monte Carlo trial's random stream."""

    master_seed: int
    trial_index: int

    def __post_init__(self) -> None:
        if self.trial_index < 0:
            raise ValueError("trial_index must be non-negative")


def eps_rms(spec: NoiseSpec) -> float:
    """Analytic RMS of a single error draw."""
    if spec.distribution == "uniform":
        return spec.eps_max / math.sqrt(3.0)
    return spec.eps_max


def trial_rng(seed: TrialSeed) -> np.random.Generator:
    """Counter-based generator that is a pure function of the seed pair."""
    key = np.array(
        [seed.master_seed & _MASK64, seed.trial_index & _MASK64], dtype=np.uint64
    )
    return np.random.Generator(np.random.Philox(key=key))


def _draw(rng: np.random.Generator, spec: NoiseSpec, size: int) -> np.ndarray:
    if spec.distribution == "uniform":
        return rng.uniform(-spec.eps_max, spec.eps_max, size=size)
    return rng.normal(0.0, spec.eps_max, size=size)


def draw_error_model(
    m: IsingModel,
    spec: NoiseSpec,
    seed: TrialSeed,
    penalty_edges: Collection[Edge] = (),
) -> IsingModel:
    """Random error Hamiltonian on the hardware graph of `m`.

    An independent epsilon is drawn on EVERY hardware edge, including edges
    whose intended coupling is zero (the unintended couplings), and on every
    vertex iff spec.perturb_fields. If spec.perturb_penalty_links is False,
    draws on `penalty_edges` are zeroed out (the stream still advances, so
    the toggle does not shift other edges' values).
    """
    rng = trial_rng(seed)
    edges = m.graph.edges
    eps = _draw(rng, spec, len(edges))
    if not spec.perturb_penalty_links and penalty_edges:
        skip = frozenset(penalty_edges)
        for rank, e in enumerate(edges):
            if e in skip:
                eps[rank] = 0.0
    couplings = {e: float(x) for e, x in zip(edges, eps) if x != 0.0}
    fields = {}
    if spec.perturb_fields:
        eps_h = _draw(rng, spec, m.graph.vertex_count)
        fields = {i: float(x) for i, x in enumerate(eps_h) if x != 0.0}
    if spec.distribution == "uniform":
        e_max = spec.eps_max
    else:
        attained = [abs(x) for x in couplings.values()] + [abs(x) for x in fields.values()]
        e_max = max(attained, default=0.0)
    return IsingModel(m.graph, couplings, fields, e_max)
