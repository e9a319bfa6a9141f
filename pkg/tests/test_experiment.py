import math

import pytest

from repising.errors import ConfigError
from repising.experiment import (
    Cell,
    ExperimentConfig,
    SweepTable,
    TrialRecord,
    build_code_graph,
    cell_seed,
    collapse_statistic,
    make_workload,
    resolve_encoding,
    resolve_instance,
    run_trial,
    run_workload_trial,
    sweep_unencoded,
)
from repising.model import make_ladder_instance
from repising.noise import NoiseSpec, TrialSeed


def ladder_config(**kw):
    defaults = dict(
        instance={"builder": "ladder", "columns": 4, "antiferro_rung": 0},
        noise=NoiseSpec(0.3),
        trials=10,
        master_seed=7,
    )
    defaults.update(kw)
    return ExperimentConfig(**defaults)


def test_resolve_instance_ladder():
    m = resolve_instance({"builder": "ladder", "columns": 5})
    assert m == make_ladder_instance(5, 0)


def test_resolve_instance_file(tmp_path):
    m = make_ladder_instance(3, 1)
    path = tmp_path / "m.json"
    m.save(path)
    assert resolve_instance({"builder": "file", "path": str(path)}) == m


def test_resolve_instance_errors():
    with pytest.raises(ConfigError):
        resolve_instance({})
    with pytest.raises(ConfigError):
        resolve_instance({"builder": "torus"})


def test_build_code_graph():
    assert build_code_graph("path", (4,)).edge_count == 3
    assert build_code_graph("grid", (3, 3)).vertex_count == 9
    assert build_code_graph("complete", (5,)).edge_count == 10
    with pytest.raises(ConfigError):
        build_code_graph("cycle", (4,))


def test_resolve_encoding_errors():
    with pytest.raises(ConfigError):
        resolve_encoding({"code_graph": "grid"})
    enc = resolve_encoding({"code_graph": "grid", "dims": (3, 3), "j_ferro": 2.0})
    assert enc.k == 9 and enc.j_ferro == 2.0


def test_config_validation():
    with pytest.raises(ConfigError):
        ladder_config(trials=0)
    with pytest.raises(ConfigError):
        ladder_config(solver_policy="quantum")
    with pytest.raises(ConfigError):
        ladder_config(instance={"builder": "nope"})


def test_trial_record_invariant():
    with pytest.raises(ValueError):
        TrialRecord(
            trial_index=0,
            failed=True,  # inconsistent: decoded energy equals the minimum
            perturbed_value=-7.0,
            logical_energy_of_decode=-7.0,
            unperturbed_min=-7.0,
            solver_id="brute",
            wall_time=0.0,
        )


def test_zero_noise_never_fails():
    cfg = ladder_config(noise=NoiseSpec(0.0), trials=5)
    for t in range(5):
        rec = run_trial(cfg, t)
        assert not rec.failed
        assert rec.logical_energy_of_decode == pytest.approx(rec.unperturbed_min)


def test_trial_determinism():
    cfg = ladder_config()
    a = run_trial(cfg, 3)
    b = run_trial(cfg, 3)
    assert a.failed == b.failed
    assert a.perturbed_value == b.perturbed_value


def test_encoded_trial_decodes():
    cfg = ladder_config(
        noise=NoiseSpec(0.2),
        encoding={"code_graph": "grid", "dims": (2, 2)},
        trials=3,
    )
    rec = run_trial(cfg, 0)
    assert rec.in_code_space is not None
    assert rec.solver_id == "frontier"


def test_unencoded_failure_monotone_signal():
    # strong noise on a small ladder fails in some but not all trials
    work = make_workload(make_ladder_instance(4, 0), NoiseSpec(0.8), None)
    fails = sum(run_workload_trial(work, TrialSeed(11, t)).failed for t in range(60))
    assert 0 < fails < 60


def test_sweep_csv_shape_and_determinism():
    table = sweep_unencoded([4], [0.2, 0.5], trials=20, master_seed=9)
    text = table.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "N,eps_max,K,failure_rate,std_err,code_space_rate,trials"
    assert len(lines) == 3
    assert all(line.split(",")[2] == "1" for line in lines[1:])
    again = sweep_unencoded([4], [0.2, 0.5], trials=20, master_seed=9)
    assert again.to_csv() == text


def test_sweep_thread_count_invariance():
    kw = dict(trials=30, master_seed=13)
    serial = sweep_unencoded([4], [0.4], threads=1, **kw)
    pooled = sweep_unencoded([4], [0.4], threads=4, **kw)
    assert serial.to_csv() == pooled.to_csv()


def test_cell_seed_stability():
    # frozen values keep sweep outputs reproducible across releases
    assert cell_seed(0, 0, 0) == cell_seed(0, 0, 0)
    assert cell_seed(0, 0, 0) != cell_seed(0, 0, 1)
    assert cell_seed(0, 0, 0) != cell_seed(0, 1, 0)
    assert cell_seed(123, 0, 5) == 18026374008340478413


def _table(points):
    cells = [
        Cell(
            n=n, eps_max=e, k=1, failure_rate=f, std_err=0.0,
            code_space_rate=1.0, trials=100, mean_wall_time=0.0, cell_seed=0,
        )
        for n, e, f in points
    ]
    return SweepTable(cells)


def test_collapse_statistic_perfect_monotone():
    # failure rate that is an increasing function of sqrt(N)*eps collapses
    points = [
        (n, e, 1 - math.exp(-2 * math.sqrt(n) * e))
        for n in (4, 6, 8, 10)
        for e in (0.1, 0.3, 0.5, 0.7)
    ]
    assert collapse_statistic(_table(points)) == pytest.approx(1.0)


def test_collapse_statistic_rejects_wrong_scaling():
    # a function of N*eps instead of sqrt(N)*eps ranks imperfectly over
    # a grid spanning a wide range of N
    points = [
        (n, e, 1 - math.exp(-0.5 * n * e))
        for n in (2, 8, 32, 128)
        for e in (0.05, 0.2, 0.8)
    ]
    assert collapse_statistic(_table(points)) < 1.0


def test_collapse_statistic_errors():
    with pytest.raises(ValueError):
        collapse_statistic(_table([(4, 0.1, 0.2), (4, 0.2, 0.3)]))
    with pytest.raises(ValueError):
        collapse_statistic(_table([(4, 0.1, 0.5), (6, 0.2, 0.5), (8, 0.3, 0.5)]))


def test_audit_catches_no_mismatch():
    # deterministic trials make the re-solve audit a no-op check
    table = sweep_unencoded([4], [0.3], trials=25, master_seed=3, audit_fraction=0.2)
    assert table.cells[0].trials == 25