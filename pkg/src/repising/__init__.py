"""Failure statistics for Ising/QUBO ground states under random coupling
imprecision, and their suppression by repetition-code encoding."""

__version__ = "0.1.0"

from .encoding import (
    DecodedState,
    EffectiveModel,
    RepetitionEncoding,
    decode,
    degree_heuristic,
    effective_logical_model,
    embed_codeword,
    encode,
    is_codeword,
    penalty_edges,
    stabilizer_generators,
)
from .errors import CapacityError, ConfigError
from .experiment import (
    Cell,
    ExperimentConfig,
    SweepTable,
    TrialRecord,
    collapse_statistic,
    run_trial,
    sweep_encoded,
    sweep_unencoded,
)
from .graph import (
    Graph,
    build_complete,
    build_grid,
    build_ladder,
    build_path,
    cartesian_product,
    product_index,
    product_vertex,
)
from .model import (
    IsingModel,
    SpinConfig,
    add,
    as_spins,
    energy,
    make_ladder_instance,
    scale,
)
from .noise import NoiseSpec, TrialSeed, draw_error_model, eps_rms
from .solvers import (
    GroundResult,
    MaxSatInstance,
    auto_solve,
    qubo_to_max2sat,
    read_wcnf,
    solve_anneal,
    solve_bnb,
    solve_brute,
    solve_frontier,
    solve_via_maxsat,
    write_wcnf,
)
