"""Repetition encoding: each logical spin becomes K ferromagnetically coupled
physical spins along an encoding graph, the physical interaction graph being
the Cartesian product of the problem graph with the encoding graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graph import Edge, Graph, canonical_edge, cartesian_product, product_index
from .model import IsingModel, SpinConfig, as_spins
from .noise import NoiseSpec, eps_rms


@dataclass(frozen=True)
class RepetitionEncoding:
    """Intra-block ferromagnet F and penalty strength J_F (> 0).

    The stored coupling on each encoding link is -j_ferro (ferromagnetic in
    the H = sum J ZZ convention). F must be connected, otherwise the blocks
    decouple and unanimity is not energetically enforced.
    """

    code_graph: Graph
    j_ferro: float = 1.0

    def __post_init__(self) -> None:
        if self.j_ferro <= 0:
            raise ValueError("j_ferro must be positive")
        if not self.code_graph.is_connected():
            raise ValueError("encoding graph must be connected")

    @property
    def k(self) -> int:
        return self.code_graph.vertex_count


@dataclass(frozen=True)
class DecodedState:
    """Per-block majority decode of a physical configuration."""

    logical: SpinConfig
    in_code_space: bool
    block_majorities: tuple[int, ...]  # |block spin sum| per block; 0 flags a tie


@dataclass(frozen=True)
class DegreeReport:
    max_problem_degree: int
    min_code_degree: int
    satisfied: bool


def penalty_edges(n_logical: int, enc: RepetitionEncoding) -> tuple[Edge, ...]:
    """Product-graph edges that carry the ferromagnetic penalty coupling."""
    k = enc.k
    out = []
    for i in range(n_logical):
        for a, b in enc.code_graph.edges:
            out.append(
                canonical_edge(product_index(i, a, k), product_index(i, b, k))
            )
    return tuple(out)


def encode(m: IsingModel, enc: RepetitionEncoding) -> IsingModel:
    """Noiseless encoded model on cartesian_product(m.graph, enc.code_graph).

    Each coupling J_ij is replicated on ((i,k),(j,k)) for every code vertex k,
    each field h_i on every (i,k), and every encoding link carries -j_ferro.
    Noise is added separately by composing with draw_error_model on the
    product graph.
    """
    k = enc.k
    pg = cartesian_product(m.graph, enc.code_graph)
    couplings: dict[Edge, float] = {}
    for (i, j), jij in m.couplings.items():
        for kk in range(k):
            couplings[
                canonical_edge(product_index(i, kk, k), product_index(j, kk, k))
            ] = jij
    for e in penalty_edges(m.graph.vertex_count, enc):
        couplings[e] = -enc.j_ferro
    fields = {}
    for i, h in m.fields.items():
        for kk in range(k):
            fields[product_index(i, kk, k)] = h
    return IsingModel(pg, couplings, fields, max(m.e_max, enc.j_ferro))


def _blocks(s: SpinConfig, n_logical: int, k: int) -> np.ndarray:
    s = as_spins(s)
    if len(s) != n_logical * k:
        raise ValueError(f"expected {n_logical * k} spins, got {len(s)}")
    return s.reshape(n_logical, k)


def is_codeword(s: SpinConfig, n_logical: int, k: int) -> bool:
    """True iff every K-spin block is unanimous."""
    blocks = _blocks(s, n_logical, k)
    return bool(np.all(np.abs(blocks.sum(axis=1, dtype=np.int64)) == k))


def decode(s: SpinConfig, n_logical: int, k: int) -> DecodedState:
    """Per-block majority vote; even-K ties resolve to +1 and carry margin 0."""
    blocks = _blocks(s, n_logical, k)
    sums = blocks.sum(axis=1, dtype=np.int64)
    logical = np.where(sums >= 0, 1, -1).astype(np.int8)
    margins = tuple(int(x) for x in np.abs(sums))
    return DecodedState(logical, all(m == k for m in margins), margins)


def embed_codeword(logical: SpinConfig, k: int) -> SpinConfig:
    """Codeword with every block unanimous at the logical value."""
    return np.repeat(as_spins(logical), k)


def stabilizer_generators(n_logical: int, k: int) -> list[tuple[int, int]]:
    """Spin-pair parity checks ((i,0),(i,j)) for j = 1..k-1 in flat indices.

    A configuration is a codeword iff every check has parity +1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    return [
        (product_index(i, 0, k), product_index(i, j, k))
        for i in range(n_logical)
        for j in range(1, k)
    ]


def check_parities(s: SpinConfig, checks: list[tuple[int, int]]) -> bool:
    s = as_spins(s)
    return all(int(s[a]) * int(s[b]) == 1 for a, b in checks)


def degree_heuristic(problem_graph: Graph, enc: RepetitionEncoding) -> DegreeReport:
    """Strict reading of the rule that the encoding graph's degree should
    dominate the problem graph's: min code degree >= max problem degree."""
    max_p = max(
        (problem_graph.degree(v) for v in range(problem_graph.vertex_count)), default=0
    )
    min_c = min(
        (enc.code_graph.degree(v) for v in range(enc.k)), default=0
    )
    return DegreeReport(max_p, min_c, min_c >= max_p)


@dataclass(frozen=True)
class EffectiveModel:
    """Code-space-restricted prediction for the encoded, noisy system.

    model carries couplings K*J_ij and fields K*h_i; coupling_noise_rms and
    field_noise_rms give the predicted sqrt(K)*eps_RMS scale of the summed
    replica noise per term; constant is the code-space energy offset from
    the penalty links (including their own noise at RMS strength).
    """

    model: IsingModel
    constant: float
    coupling_noise_rms: float
    field_noise_rms: float


def effective_logical_model(
    m: IsingModel, enc: RepetitionEncoding, spec: NoiseSpec
) -> EffectiveModel:
    k = enc.k
    rms = eps_rms(spec)
    scaled = IsingModel(
        m.graph,
        {e: k * j for e, j in m.couplings.items()},
        {i: k * h for i, h in m.fields.items()},
        k * m.e_max,
    )
    n_penalty = m.graph.vertex_count * enc.code_graph.edge_count
    constant = -enc.j_ferro * n_penalty + math.sqrt(n_penalty) * rms
    return EffectiveModel(
        scaled,
        constant,
        math.sqrt(k) * rms,
        math.sqrt(k) * rms if spec.perturb_fields else 0.0,
    )
