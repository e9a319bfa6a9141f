import json

import numpy as np
import pytest

from conftest import oracle_ground

from repising.graph import Graph, build_ladder
from repising.model import (
    IsingModel,
    add,
    as_spins,
    energy,
    make_ladder_instance,
    scale,
)


def single_edge(j=-1.0):
    return IsingModel(Graph(2, ((0, 1),)), {(0, 1): j}, {}, 1.0)


def test_energy_single_edge():
    assert energy(single_edge(-1.0), as_spins([1, 1])) == -1.0


def test_energy_all_zero():
    m = IsingModel(build_ladder(3), {}, {}, 1.0)
    assert energy(m, as_spins([1, -1, 1, -1, 1, 1])) == 0.0


def test_energy_length_mismatch():
    with pytest.raises(ValueError):
        energy(single_edge(), as_spins([1, 1, 1]))


def test_ladder_one_bad_rung_minimum():
    # 4-column ladder, chains J=-1, antiferromagnetic rung at column 0
    m = make_ladder_instance(4, 0)
    best, count, _ = oracle_ground(m)
    assert best == -7.0
    assert count == 2


def test_add_identity_and_sum():
    m = single_edge(0.5)
    zero = IsingModel(m.graph, {}, {}, 1.0)
    total = add(m, zero)
    assert total.couplings == m.couplings and total.fields == m.fields
    m2 = single_edge(-0.2)
    assert add(m, m2).couplings[(0, 1)] == pytest.approx(0.3)


def test_add_graph_mismatch():
    with pytest.raises(ValueError):
        add(single_edge(), IsingModel(Graph(3, ((0, 1),)), {}, {}, 1.0))


def test_add_linearity(rng):
    g = build_ladder(3)
    m1 = IsingModel(g, {e: rng.uniform(-1, 1) for e in g.edges}, {0: 0.3}, 1.0)
    m2 = IsingModel(g, {e: rng.uniform(-1, 1) for e in g.edges}, {3: -0.7}, 1.0)
    total = add(m1, m2)
    for _ in range(20):
        s = as_spins(rng.choice([-1, 1], size=6))
        assert energy(total, s) == pytest.approx(energy(m1, s) + energy(m2, s), abs=1e-12)


def test_scale_linearity(rng):
    m = make_ladder_instance(3, 1)
    s = as_spins(rng.choice([-1, 1], size=6))
    assert energy(scale(m, 2.5), s) == pytest.approx(2.5 * energy(m, s))


def test_global_flip_invariance(rng):
    m = make_ladder_instance(5, 2)
    for _ in range(10):
        s = as_spins(rng.choice([-1, 1], size=10))
        assert energy(m, s) == energy(m, -s)


def test_energy_lower_bound():
    m = make_ladder_instance(6, 0)
    bound = -(sum(abs(j) for j in m.couplings.values()) + sum(abs(h) for h in m.fields.values()))
    best, _, _ = oracle_ground(m)
    assert best >= bound


def test_ladder_instance_structure():
    m = make_ladder_instance(2, 0)
    assert len(m.couplings) == 3  # two chain edges + the one antiferro rung
    assert m.couplings[(0, 1)] == 1.0
    assert m.coupling(2, 3) == 0.0  # hardware edge present, coupling zero
    assert (2, 3) in m.graph.edge_set


def test_ladder_ground_space_is_antialigned_chains():
    for columns in (2, 3, 5):
        m = make_ladder_instance(columns, 0)
        best, count, cfg = oracle_ground(m)
        assert count == 2
        top = cfg[0::2]
        bottom = cfg[1::2]
        assert len(set(top)) == 1 and len(set(bottom)) == 1
        assert top[0] == -bottom[0]


def test_ladder_instance_bad_rung():
    with pytest.raises(ValueError):
        make_ladder_instance(4, 4)


def test_json_roundtrip(tmp_path, rng):
    m = IsingModel(
        build_ladder(4),
        {e: rng.uniform(-1, 1) for e in build_ladder(4).edges[:5]},
        {2: 0.123456789012345},
        1.0,
    )
    path = tmp_path / "inst.json"
    m.save(path)
    loaded = IsingModel.load(path)
    assert loaded == m
    # doubles survive the round trip bit-exactly
    data = json.loads(path.read_text())
    assert data["fields"] == [[2, 0.123456789012345]]


def test_model_validation():
    g = Graph(2, ((0, 1),))
    with pytest.raises(ValueError):
        IsingModel(g, {(0, 1): 2.0}, {}, 1.0)  # exceeds e_max
    with pytest.raises(ValueError):
        IsingModel(g, {(1, 2): 0.1}, {}, 1.0)  # not an edge
    with pytest.raises(ValueError):
        IsingModel(g, {}, {5: 0.1}, 1.0)  # not a vertex
