"""Lackadaisical quantum-walk spatial search with broken-link noise."""

from .lattice import Direction, Lattice, reverse
from .qstate import (
    WalkState,
    position_distribution,
    uniform_initial_state,
    vertex_probability,
)
from .evolution import CoinSpec, OracleSpec, apply_coin, apply_oracle, apply_shift, search_step
from .percolation import EdgeMask, NoiseSpec, sample_mask, trajectory_rng
from .observables import (
    EnsembleResult,
    TrajectoryRecord,
    aggregate_ensemble,
    success_probability,
    time_averaged_distribution,
)
from .runner import WalkParams, run_ensemble, run_trajectory, write_output

__version__ = "0.1.0"

__all__ = [
    "CoinSpec",
    "Direction",
    "EdgeMask",
    "EnsembleResult",
    "Lattice",
    "NoiseSpec",
    "OracleSpec",
    "TrajectoryRecord",
    "WalkParams",
    "WalkState",
    "aggregate_ensemble",
    "apply_coin",
    "apply_oracle",
    "apply_shift",
    "position_distribution",
    "reverse",
    "run_ensemble",
    "run_trajectory",
    "sample_mask",
    "search_step",
    "success_probability",
    "time_averaged_distribution",
    "trajectory_rng",
    "uniform_initial_state",
    "vertex_probability",
    "write_output",
]
