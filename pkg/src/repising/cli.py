"""Command-line front end: solve instances, run failure-probability sweeps,
and reproduce the worked single-seed failure/rescue example.

Exit codes: 0 ok, 2 input error, 3 solver capacity refusal, 4 seed search
exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .encoding import RepetitionEncoding, decode
from .errors import CapacityError, ConfigError
from .experiment import (
    DEFAULT_GRID_CODES,
    NoiseSpec,
    Workload,
    collapse_statistic,
    make_workload,
    run_workload_trial,
    sweep_encoded,
    sweep_unencoded,
)
from .graph import build_grid
from .model import IsingModel, energy, make_ladder_instance
from .noise import TrialSeed
from .solvers import (
    format_wcnf,
    qubo_to_max2sat,
    solve_anneal,
    solve_brute,
    solve_frontier,
    solve_via_maxsat,
    auto_solve,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_EXHAUSTED = 4


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _noise_from_dict(d: dict) -> NoiseSpec:
    try:
        return NoiseSpec(
            eps_max=float(d.get("eps_max", 0.0)),
            distribution=d.get("distribution", "uniform"),
            perturb_fields=bool(d.get("perturb_fields", False)),
            perturb_penalty_links=bool(d.get("perturb_penalty_links", True)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad noise spec: {exc}") from None


def cmd_solve(args) -> int:
    model = IsingModel.from_dict(_load_json(args.instance))
    solvers = {
        "auto": auto_solve,
        "brute": solve_brute,
        "frontier": solve_frontier,
        "bnb": solve_via_maxsat,
        "anneal": solve_anneal,
    }
    result = solvers[args.solver](model)
    print(f"solver:     {result.solver_id}{'' if result.exact else ' (heuristic)'}")
    print(f"value:      {result.value!r}")
    print(f"config:     {''.join('+' if s > 0 else '-' for s in result.config)}")
    if result.degeneracy is not None:
        print(f"degeneracy: {result.degeneracy}")
    for key, val in sorted(result.stats.items()):
        print(f"{key}: {val}")
    if args.wcnf:
        Path(args.wcnf).write_text(format_wcnf(qubo_to_max2sat(model)))
        print(f"wcnf:       {args.wcnf}")
    return EXIT_OK


UNENCODED_DEFAULTS = {
    "N_list": list(range(3, 14)),
    "eps_list": [round(0.05 * i, 2) for i in range(1, 21)],
    "trials": 1000,
    "antiferro_rung": 0,
    "solver_policy": "auto",
    "noise": {},
}

ENCODED_DEFAULTS = {
    "N": 13,
    "codes": [list(c) for c in ((n, list(d)) for n, d in DEFAULT_GRID_CODES)],
    "eps_list": [round(0.05 * i, 2) for i in range(1, 21)],
    "trials": 400,
    "j_ferro": 1.0,
    "antiferro_rung": 0,
    "solver_policy": "auto",
    "noise": {},
}


def _resolved_config(raw: dict, mode: str) -> dict:
    defaults = dict(UNENCODED_DEFAULTS if mode == "unencoded" else ENCODED_DEFAULTS)
    known = set(defaults) | {"mode", "master_seed"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "master_seed" not in raw:
        raise ConfigError("config must set master_seed")
    resolved = {**defaults, **raw, "mode": mode}
    if int(resolved["trials"]) < 1:
        raise ConfigError("trials must be >= 1")
    return resolved


def cmd_sweep(args) -> int:
    raw = _load_json(args.config)
    mode = args.mode or raw.get("mode")
    if mode not in ("unencoded", "encoded"):
        raise ConfigError("mode must be 'unencoded' or 'encoded' (flag or config)")
    if args.seed is not None:
        raw = {**raw, "master_seed": args.seed}
    cfg = _resolved_config(raw, mode)
    noise = _noise_from_dict(cfg["noise"])
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    started = datetime.now(timezone.utc).isoformat()

    if mode == "unencoded":
        table = sweep_unencoded(
            cfg["N_list"],
            cfg["eps_list"],
            int(cfg["trials"]),
            int(cfg["master_seed"]),
            noise=noise,
            antiferro_rung=int(cfg["antiferro_rung"]),
            solver_policy=cfg["solver_policy"],
            threads=args.threads,
        )
        outputs = {"sweep.csv": table.to_csv()}
        seeds = {"sweep.csv": table.cell_seeds()}
    else:
        codes = [(name, tuple(dims)) for name, dims in cfg["codes"]]
        encoded, rescaled = sweep_encoded(
            int(cfg["N"]),
            codes,
            cfg["eps_list"],
            int(cfg["trials"]),
            int(cfg["master_seed"]),
            noise=noise,
            j_ferro=float(cfg["j_ferro"]),
            antiferro_rung=int(cfg["antiferro_rung"]),
            solver_policy=cfg["solver_policy"],
            threads=args.threads,
        )
        outputs = {"encoded.csv": encoded.to_csv(), "rescaled.csv": rescaled.to_csv()}
        seeds = {
            "encoded.csv": encoded.cell_seeds(),
            "rescaled.csv": rescaled.cell_seeds(),
        }

    manifest = {
        "tool": "repising",
        "version": __version__,
        "config": cfg,
        "config_sha256": _sha256(_canonical_json(cfg).encode()),
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "cell_seeds": seeds,
        "outputs": [
            {"path": name, "sha256": _sha256(text.encode())}
            for name, text in sorted(outputs.items())
        ],
    }
    for name, text in outputs.items():
        (out / name).write_text(text)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    for name in [*outputs, "manifest.json"]:
        print(out / name)
    return EXIT_OK


def cmd_demo_fig1(args) -> int:
    problem = make_ladder_instance(args.columns, 0)
    spec = NoiseSpec(eps_max=args.eps)
    enc = RepetitionEncoding(build_grid(3, 3), 1.0)
    plain = make_workload(problem, spec, None)
    encoded: Workload | None = None

    ground = solve_brute(problem)
    flipped = (-ground.config).astype(np.int8)
    report = {
        "columns": args.columns,
        "eps_max": args.eps,
        "master_seed": args.seed,
        "budget": args.budget,
        "unperturbed_min": ground.value,
        "unperturbed_ground_states": [
            [int(s) for s in ground.config],
            [int(s) for s in flipped],
        ],
        "degeneracy": ground.degeneracy,
        "noise_on_penalty_links": spec.perturb_penalty_links,
    }

    found = None
    failing_seeds_tried = 0
    for t in range(args.budget):
        record = run_workload_trial(plain, TrialSeed(args.seed, t))
        if not record.failed:
            continue
        failing_seeds_tried += 1
        if encoded is None:
            encoded = make_workload(problem, spec, enc)
        enc_record = run_workload_trial(encoded, TrialSeed(args.seed, t))
        if not enc_record.failed:
            found = (t, record, enc_record)
            break
    if found is None:
        print(
            f"no rescued failing seed in trials 0..{args.budget - 1} "
            f"({failing_seeds_tried} failing)",
            file=sys.stderr,
        )
        return EXIT_EXHAUSTED

    t, record, enc_record = found
    from .model import add
    from .noise import draw_error_model

    delta = draw_error_model(problem, spec, TrialSeed(args.seed, t))
    perturbed_result = solve_frontier(add(problem, delta))
    bad = perturbed_result.config
    violated = [
        [u, v, j]
        for (u, v), j in sorted(problem.couplings.items())
        if j * bad[u] * bad[v] > 0
    ]
    report.update(
        {
            "failing_trial_index": t,
            "failing_seeds_before_rescue": failing_seeds_tried - 1,
            "perturbed_ground_state": [int(s) for s in bad],
            "perturbed_value": record.perturbed_value,
            "unperturbed_energy_of_perturbed_ground": record.logical_energy_of_decode,
            "violated_intended_links": violated,
            "encoded": {
                "code_graph": "grid",
                "dims": [3, 3],
                "in_code_space": enc_record.in_code_space,
                "decoded_logical_energy": enc_record.logical_energy_of_decode,
                "rescued": not enc_record.failed,
            },
        }
    )

    print(f"ladder columns:        {args.columns} ({2 * args.columns} spins)")
    print(f"unperturbed minimum:   {ground.value} (degeneracy {ground.degeneracy})")
    print(f"failing trial index:   {t} (master seed {args.seed})")
    print(f"perturbed ground cfg:  {''.join('+' if s > 0 else '-' for s in bad)}")
    print(f"its unperturbed energy: {record.logical_energy_of_decode!r}")
    print(f"violated intended links: {[(u, v) for u, v, _ in violated]}")
    print("3x3 grid encoding on the same draw:")
    print(f"  in code space:       {enc_record.in_code_space}")
    print(f"  decoded energy:      {enc_record.logical_energy_of_decode!r}")
    print(f"  rescued:             {not enc_record.failed}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "demo_fig1.json").write_text(json.dumps(report, indent=2) + "\n")
        print(f"report: {out / 'demo_fig1.json'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repising",
        description="Coupling-noise failure statistics for Ising/QUBO ground "
        "states, with repetition-code encoding",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance JSON exactly")
    p_solve.add_argument("instance", help="instance JSON path")
    p_solve.add_argument(
        "--solver",
        choices=["auto", "brute", "frontier", "bnb", "anneal"],
        default="auto",
    )
    p_solve.add_argument("--wcnf", metavar="OUT", help="also write the DIMACS reduction")
    p_solve.set_defaults(func=cmd_solve)

    p_sweep = sub.add_parser("sweep", help="run a Monte Carlo failure sweep")
    p_sweep.add_argument("--config", required=True, help="experiment config JSON")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--threads", type=int, default=1)
    p_sweep.add_argument("--mode", choices=["unencoded", "encoded"])
    p_sweep.add_argument("--seed", type=int, help="override master_seed")
    p_sweep.set_defaults(func=cmd_sweep)

    p_demo = sub.add_parser(
        "demo-fig1", help="find a failing noise draw and its encoded rescue"
    )
    p_demo.add_argument("--budget", type=int, default=10_000)
    p_demo.add_argument("--seed", type=int, default=2014)
    p_demo.add_argument("--eps", type=float, default=0.3)
    p_demo.add_argument("--columns", type=int, default=8)
    p_demo.add_argument("--out", help="directory for the machine-readable report")
    p_demo.set_defaults(func=cmd_demo_fig1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
