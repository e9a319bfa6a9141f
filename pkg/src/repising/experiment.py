"""Monte Carlo failure-probability harness.

A trial perturbs the (optionally encoded) problem Hamiltonian with one noise
draw, solves the perturbed model exactly, majority-decodes the ground state,
and scores failure by whether the decoded configuration still attains the
unperturbed logical minimum. Sweeps aggregate trials into plot-ready tables.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import stats as _scipy_stats

from .encoding import RepetitionEncoding, decode, encode, penalty_edges
from .errors import ConfigError
from .graph import Graph, build_complete, build_grid, build_path
from .model import ENERGY_TOL, IsingModel, add, energy, make_ladder_instance
from .noise import NoiseSpec, TrialSeed, draw_error_model
from .solvers import auto_solve, solve_brute, solve_frontier, solve_via_maxsat

NEAR_DEGENERACY_GAP = 1e-6
DEFAULT_AUDIT_FRACTION = 0.01

#: Default grid shapes for the encoded failure sweep, by block count K.
DEFAULT_GRID_CODES = (("grid", (2, 2)), ("grid", (2, 3)), ("grid", (3, 3)), ("grid", (3, 4)))


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolvable description of one Monte Carlo experiment."""

    instance: dict
    noise: NoiseSpec
    trials: int
    master_seed: int
    encoding: dict | None = None
    solver_policy: str = "auto"

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.solver_policy not in ("auto", "brute", "frontier", "bnb"):
            raise ConfigError(f"unknown solver_policy {self.solver_policy!r}")
        resolve_instance(self.instance)
        if self.encoding is not None:
            resolve_encoding(self.encoding)


@dataclass
class TrialRecord:
    trial_index: int
    failed: bool
    perturbed_value: float
    logical_energy_of_decode: float
    unperturbed_min: float
    solver_id: str
    wall_time: float
    in_code_space: bool | None = None
    near_degenerate: bool | None = None

    def __post_init__(self) -> None:
        expected = self.logical_energy_of_decode > self.unperturbed_min + ENERGY_TOL
        if self.failed != expected:
            raise ValueError("failed flag inconsistent with energy gap")


@dataclass(frozen=True)
class Cell:
    n: int
    eps_max: float
    k: int
    failure_rate: float
    std_err: float
    code_space_rate: float
    trials: int
    mean_wall_time: float
    cell_seed: int


CSV_HEADER = "N,eps_max,K,failure_rate,std_err,code_space_rate,trials"


@dataclass
class SweepTable:
    cells: list[Cell] = field(default_factory=list)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for c in self.cells:
            lines.append(
                f"{c.n},{c.eps_max!r},{c.k},{c.failure_rate!r},"
                f"{c.std_err!r},{c.code_space_rate!r},{c.trials}"
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_csv())

    def cell_seeds(self) -> list[int]:
        return [c.cell_seed for c in self.cells]


def resolve_instance(desc: dict) -> IsingModel:
    """Build the problem model from a config descriptor."""
    try:
        builder = desc["builder"]
    except (TypeError, KeyError):
        raise ConfigError("instance descriptor needs a 'builder' key") from None
    if builder == "ladder":
        return make_ladder_instance(
            int(desc["columns"]), int(desc.get("antiferro_rung", 0))
        )
    if builder == "file":
        return IsingModel.load(desc["path"])
    raise ConfigError(f"unknown instance builder {builder!r}")


def build_code_graph(name: str, dims) -> Graph:
    if name == "path":
        (n,) = dims
        return build_path(int(n))
    if name == "grid":
        rows, cols = dims
        return build_grid(int(rows), int(cols))
    if name == "complete":
        (n,) = dims
        return build_complete(int(n))
    raise ConfigError(f"unknown code graph {name!r}")


def resolve_encoding(desc: dict) -> RepetitionEncoding:
    try:
        graph = build_code_graph(desc["code_graph"], desc["dims"])
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"bad encoding descriptor: {exc}") from None
    return RepetitionEncoding(graph, float(desc.get("j_ferro", 1.0)))


def _solve(model: IsingModel, policy: str):
    if policy == "auto":
        return auto_solve(model)
    if policy == "brute":
        return solve_brute(model)
    if policy == "frontier":
        return solve_frontier(model)
    if policy == "bnb":
        return solve_via_maxsat(model)
    raise ConfigError(f"unknown solver policy {policy!r}")


@dataclass(frozen=True)
class Workload:
    """Fully resolved per-cell state shared by all of the cell's trials."""

    problem: IsingModel
    spec: NoiseSpec
    encoding: RepetitionEncoding | None
    physical: IsingModel  # encoded model, or the problem itself
    penalty: tuple
    unperturbed_min: float
    solver_policy: str


def make_workload(
    problem: IsingModel,
    spec: NoiseSpec,
    encoding: RepetitionEncoding | None,
    solver_policy: str = "auto",
) -> Workload:
    if encoding is not None:
        physical = encode(problem, encoding)
        penalty = penalty_edges(problem.graph.vertex_count, encoding)
    else:
        physical = problem
        penalty = ()
    unperturbed = auto_solve(problem)
    return Workload(
        problem, spec, encoding, physical, penalty, unperturbed.value, solver_policy
    )


def run_workload_trial(work: Workload, seed: TrialSeed) -> TrialRecord:
    start = time.perf_counter()
    delta = draw_error_model(work.physical, work.spec, seed, work.penalty)
    perturbed = add(work.physical, delta)
    result = _solve(perturbed, work.solver_policy)
    if work.encoding is not None:
        decoded = decode(
            result.config, work.problem.graph.vertex_count, work.encoding.k
        )
        logical = decoded.logical
        in_code_space = decoded.in_code_space
    else:
        logical = result.config
        in_code_space = None
    logical_energy = energy(work.problem, logical)
    wall = time.perf_counter() - start
    return TrialRecord(
        trial_index=seed.trial_index,
        failed=logical_energy > work.unperturbed_min + ENERGY_TOL,
        perturbed_value=result.value,
        logical_energy_of_decode=logical_energy,
        unperturbed_min=work.unperturbed_min,
        solver_id=result.solver_id,
        wall_time=wall,
        in_code_space=in_code_space,
        near_degenerate=(
            result.second_gap < NEAR_DEGENERACY_GAP
            if result.second_gap is not None
            else None
        ),
    )


def run_trial(cfg: ExperimentConfig, t: int) -> TrialRecord:
    """One trial of a configured experiment, seeded by (master_seed, t)."""
    problem = resolve_instance(cfg.instance)
    enc = resolve_encoding(cfg.encoding) if cfg.encoding is not None else None
    work = make_workload(problem, cfg.noise, enc, cfg.solver_policy)
    return run_workload_trial(work, TrialSeed(cfg.master_seed, t))


def cell_seed(master_seed: int, namespace: int, index: int) -> int:
    """Deterministic 64-bit seed for one sweep cell."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(namespace, index))
    return int(ss.generate_state(1, np.uint64)[0])


def _run_cell(
    work: Workload,
    seed: int,
    trials: int,
    threads: int,
    audit_fraction: float,
) -> list[TrialRecord]:
    def one(t: int) -> TrialRecord:
        return run_workload_trial(work, TrialSeed(seed, t))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(one, range(trials)))
    else:
        records = [one(t) for t in range(trials)]
    if audit_fraction > 0:
        step = max(1, round(1 / audit_fraction))
        for t in range(0, trials, step):
            again = one(t)
            before = records[t]
            if (
                again.failed != before.failed
                or again.perturbed_value != before.perturbed_value
                or again.logical_energy_of_decode != before.logical_energy_of_decode
            ):
                raise RuntimeError(f"audit mismatch on trial {t}")
    return records


def _aggregate(records: list[TrialRecord], n: int, eps: float, k: int, seed: int) -> Cell:
    trials = len(records)
    fails = sum(r.failed for r in records)
    p = fails / trials
    in_code = [r.in_code_space for r in records]
    if all(x is None for x in in_code):
        code_rate = 1.0
    else:
        code_rate = sum(bool(x) for x in in_code) / trials
    return Cell(
        n=n,
        eps_max=eps,
        k=k,
        failure_rate=p,
        std_err=math.sqrt(p * (1 - p) / trials),
        code_space_rate=code_rate,
        trials=trials,
        mean_wall_time=sum(r.wall_time for r in records) / trials,
        cell_seed=seed,
    )


def sweep_unencoded(
    n_list,
    eps_list,
    trials: int,
    master_seed: int,
    noise: NoiseSpec | None = None,
    antiferro_rung: int = 0,
    solver_policy: str = "auto",
    threads: int = 1,
    audit_fraction: float = DEFAULT_AUDIT_FRACTION,
    seed_namespace: int = 0,
) -> SweepTable:
    """Failure probability of the ladder instance per (N, eps_max) cell."""
    base_spec = noise or NoiseSpec(eps_max=0.0)
    table = SweepTable()
    index = 0
    for n in n_list:
        problem = make_ladder_instance(int(n), antiferro_rung)
        for eps in eps_list:
            spec = replace(base_spec, eps_max=float(eps))
            work = make_workload(problem, spec, None, solver_policy)
            seed = cell_seed(master_seed, seed_namespace, index)
            records = _run_cell(work, seed, trials, threads, audit_fraction)
            table.cells.append(_aggregate(records, int(n), float(eps), 1, seed))
            index += 1
    return table


def sweep_encoded(
    n: int,
    code_descriptors,
    eps_list,
    trials: int,
    master_seed: int,
    noise: NoiseSpec | None = None,
    j_ferro: float = 1.0,
    antiferro_rung: int = 0,
    solver_policy: str = "auto",
    threads: int = 1,
    audit_fraction: float = DEFAULT_AUDIT_FRACTION,
) -> tuple[SweepTable, SweepTable]:
    """Encoded failure probabilities plus the eps/sqrt(K) rescaled unencoded
    comparison curves for overlaying both on a common axis."""
    base_spec = noise or NoiseSpec(eps_max=0.0)
    problem = make_ladder_instance(int(n), antiferro_rung)
    encoded_table = SweepTable()
    rescaled_table = SweepTable()
    index = 0
    for name, dims in code_descriptors:
        enc = RepetitionEncoding(build_code_graph(name, dims), j_ferro)
        for eps in eps_list:
            spec = replace(base_spec, eps_max=float(eps))
            work = make_workload(problem, spec, enc, solver_policy)
            seed = cell_seed(master_seed, 0, index)
            records = _run_cell(work, seed, trials, threads, audit_fraction)
            encoded_table.cells.append(
                _aggregate(records, int(n), float(eps), enc.k, seed)
            )
            # paired comparison: unencoded at eps / sqrt(K)
            eps_scaled = float(eps) / math.sqrt(enc.k)
            spec_scaled = replace(base_spec, eps_max=eps_scaled)
            work_scaled = make_workload(problem, spec_scaled, None, solver_policy)
            seed_scaled = cell_seed(master_seed, 1, index)
            records_scaled = _run_cell(
                work_scaled, seed_scaled, trials, threads, audit_fraction
            )
            rescaled_table.cells.append(
                _aggregate(records_scaled, int(n), eps_scaled, enc.k, seed_scaled)
            )
            index += 1
    return encoded_table, rescaled_table


def collapse_statistic(table: SweepTable) -> float:
    """Spearman rank correlation between failure rate and sqrt(N)*eps_max."""
    if len({c.n for c in table.cells}) < 2:
        raise ValueError("collapse statistic needs at least two N values")
    x = [math.sqrt(c.n) * c.eps_max for c in table.cells]
    y = [c.failure_rate for c in table.cells]
    if len(set(x)) < 2 or len(set(y)) < 2:
        raise ValueError("correlation undefined on a constant table")
    rho = _scipy_stats.spearmanr(x, y).statistic
    if not np.isfinite(rho):
        raise ValueError("correlation undefined on a constant table")
    return float(rho)
