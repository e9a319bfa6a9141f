import itertools
import math

import numpy as np
import pytest

from conftest import oracle_energy

from repising.encoding import (
    DegreeReport,
    RepetitionEncoding,
    check_parities,
    decode,
    degree_heuristic,
    effective_logical_model,
    embed_codeword,
    encode,
    is_codeword,
    penalty_edges,
    stabilizer_generators,
)
from repising.graph import Graph, build_complete, build_grid, build_ladder, build_path
from repising.model import IsingModel, as_spins, energy, make_ladder_instance
from repising.noise import NoiseSpec, TrialSeed, draw_error_model, eps_rms


def test_encoding_requires_connected_code_graph():
    with pytest.raises(ValueError):
        RepetitionEncoding(Graph(2, ()), 1.0)
    with pytest.raises(ValueError):
        RepetitionEncoding(build_path(3), 0.0)


def test_encode_single_edge_path2():
    m = IsingModel(Graph(2, ((0, 1),)), {(0, 1): -1.0}, {}, 1.0)
    enc = RepetitionEncoding(build_path(2), 1.0)
    em = encode(m, enc)
    values = sorted(em.couplings.values())
    assert values == [-1.0, -1.0, -1.0, -1.0]  # two replicas + two penalty links
    assert em.graph.edge_count == 4


def test_encode_k1_identity():
    m = make_ladder_instance(3, 0)
    em = encode(m, RepetitionEncoding(build_path(1), 1.0))
    assert em.couplings == m.couplings
    assert em.fields == m.fields
    assert em.graph == m.graph


def test_encode_replicates_fields():
    m = IsingModel(Graph(2, ((0, 1),)), {(0, 1): 0.5}, {0: -0.25}, 1.0)
    enc = RepetitionEncoding(build_path(3), 1.0)
    em = encode(m, enc)
    assert em.fields == {0: -0.25, 1: -0.25, 2: -0.25}


def test_codeword_energy_identity_exhaustive():
    # K * E_logical - J_F * |V| * |E_F| for every codeword, small instances
    rng = np.random.default_rng(3)
    for code, jf in ((build_path(3), 1.0), (build_grid(2, 2), 0.7), (build_complete(4), 1.2)):
        enc = RepetitionEncoding(code, jf)
        g = build_ladder(2)  # 4 logical vertices
        m = IsingModel(
            g, {e: float(rng.uniform(-1, 1)) for e in g.edges},
            {0: 0.3, 3: -0.4}, 1.0,
        )
        n = g.vertex_count
        const = -jf * n * code.edge_count
        for bits in itertools.product([1, -1], repeat=n):
            s = as_spins(bits)
            sbar = embed_codeword(s, enc.k)
            assert oracle_energy(encode(m, enc), sbar) == pytest.approx(
                enc.k * oracle_energy(m, s) + const, abs=1e-9
            )


def test_penalty_gap_single_flip():
    m = make_ladder_instance(2, 0)
    enc = RepetitionEncoding(build_grid(2, 2), 1.3)
    em = encode(m, enc)
    s = embed_codeword(as_spins([1, -1, 1, -1]), enc.k)
    base = energy(em, s)
    # flipping one physical spin raises the penalty part by 2*J_F*deg_F
    for i in range(4):
        for k in range(enc.k):
            flipped = s.copy()
            idx = i * enc.k + k
            flipped[idx] = -flipped[idx]
            penalty_rise = 2 * enc.j_ferro * enc.code_graph.degree(k)
            # isolate the penalty contribution by comparing against the
            # same flip in the penalty-free encoded model
            em_free = encode(m, RepetitionEncoding(enc.code_graph, 1e-12))
            problem_delta = energy(em_free, flipped) - energy(em_free, s)
            assert energy(em, flipped) - base == pytest.approx(
                problem_delta + penalty_rise, abs=1e-6
            )


def test_is_codeword():
    assert is_codeword(as_spins([1] * 6), 2, 3)
    s = as_spins([1, 1, 1, 1, 1, -1])
    assert not is_codeword(s, 2, 3)


def test_codeword_fraction_monte_carlo():
    rng = np.random.default_rng(11)
    n, k, trials = 2, 3, 20000
    hits = sum(
        is_codeword(as_spins(rng.choice([-1, 1], size=n * k)), n, k)
        for _ in range(trials)
    )
    p = (2 / 2**k) ** n
    sigma = math.sqrt(p * (1 - p) / trials)
    assert abs(hits / trials - p) < 3 * sigma


def test_decode_basic():
    d = decode(as_spins([-1] * 6), 2, 3)
    assert list(d.logical) == [-1, -1]
    assert d.in_code_space and d.block_majorities == (3, 3)

    d = decode(as_spins([1, 1, -1]), 1, 3)
    assert list(d.logical) == [1]
    assert not d.in_code_space and d.block_majorities == (1,)


def test_decode_tie_breaks_positive():
    d = decode(as_spins([1, -1]), 1, 2)
    assert list(d.logical) == [1]
    assert d.block_majorities == (0,)


def test_decode_roundtrip_exhaustive():
    for n in range(1, 7):
        for k in range(1, 5):
            for bits in itertools.product([1, -1], repeat=n):
                s = as_spins(bits)
                d = decode(embed_codeword(s, k), n, k)
                assert d.in_code_space
                assert np.array_equal(d.logical, s)


def test_stabilizer_generators():
    assert stabilizer_generators(3, 1) == []
    checks = stabilizer_generators(2, 3)
    assert len(checks) == 4
    rng = np.random.default_rng(4)
    for _ in range(500):
        s = as_spins(rng.choice([-1, 1], size=6))
        assert check_parities(s, checks) == is_codeword(s, 2, 3)


def test_degree_heuristic():
    ladder = build_ladder(8)
    path9 = RepetitionEncoding(build_path(9), 1.0)
    grid33 = RepetitionEncoding(build_grid(3, 3), 1.0)
    complete9 = RepetitionEncoding(build_complete(9), 1.0)
    assert degree_heuristic(ladder, path9) == DegreeReport(3, 1, False)
    assert degree_heuristic(ladder, grid33) == DegreeReport(3, 2, False)
    assert degree_heuristic(ladder, complete9) == DegreeReport(3, 8, True)


def test_effective_model_noiseless():
    m = make_ladder_instance(4, 0)
    enc = RepetitionEncoding(build_grid(3, 3), 1.0)
    eff = effective_logical_model(m, enc, NoiseSpec(0.0))
    assert eff.constant == -1.0 * 8 * 12
    assert eff.coupling_noise_rms == 0.0
    for e, j in m.couplings.items():
        assert eff.model.couplings[e] == 9 * j


def test_effective_noise_reduction_factor():
    m = make_ladder_instance(4, 0)
    enc = RepetitionEncoding(build_grid(3, 3), 1.0)
    spec = NoiseSpec(0.3)
    eff = effective_logical_model(m, enc, spec)
    relative = eff.coupling_noise_rms / eff.model.e_max
    unencoded = eps_rms(spec) / m.e_max
    # K = 9 cuts the relative noise scale by a factor of 3
    assert relative == pytest.approx(unencoded / 3)


def test_replica_noise_sums_scale_as_sqrt_k():
    m = IsingModel(Graph(2, ((0, 1),)), {(0, 1): -1.0}, {}, 1.0)
    enc = RepetitionEncoding(build_grid(3, 3), 1.0)
    em = encode(m, enc)
    spec = NoiseSpec(0.3)
    k = enc.k
    trials = 2000
    sums = np.empty(trials)
    for t in range(trials):
        dm = draw_error_model(em, spec, TrialSeed(21, t))
        sums[t] = sum(dm.coupling(0 * k + kk, 1 * k + kk) for kk in range(k))
    assert np.std(sums) == pytest.approx(math.sqrt(k) * eps_rms(spec), rel=0.08)
