"""Measured quantities: success series, time-averaged distribution, ensembles.

The success series includes step 0, so plots show the 1/N starting level.
The time average deliberately excludes step 0: it is the arithmetic mean of
the position distribution over steps 1..T.

Cross-run spread uses the sample standard deviation (divisor n - 1),
defined as zero for a single run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lattice import Vertex
from .qstate import WalkState, vertex_probability


@dataclass
class TrajectoryRecord:
    """One noise realization: success per step 0..T plus the step-1..T average."""

    success_series: np.ndarray  # shape (T + 1,)
    averaged_distribution: np.ndarray  # shape (N,)


@dataclass
class EnsembleResult:
    mean_success: np.ndarray
    std_success: np.ndarray
    mean_averaged_distribution: np.ndarray
    run_count: int
    params: object | None = None  # WalkParams, attached by the runner


def success_probability(state: WalkState, marked: Vertex) -> float:
    """Probability of measuring the marked vertex."""
    return vertex_probability(state, marked)


def time_averaged_distribution(
    per_step_distributions: Sequence[np.ndarray], T: int
) -> np.ndarray:
    """Entrywise mean of the distributions at steps 1..T (step 0 excluded)."""
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    if len(per_step_distributions) != T:
        raise ValueError(
            f"expected {T} distributions for steps 1..{T}, "
            f"got {len(per_step_distributions)}"
        )
    return np.mean(np.asarray(per_step_distributions), axis=0)


def aggregate_ensemble(records: list[TrajectoryRecord]) -> EnsembleResult:
    """Per-step mean/std of success and the mean time-averaged distribution."""
    if not records:
        raise ValueError("cannot aggregate an empty ensemble")
    series_len = records[0].success_series.shape
    dist_len = records[0].averaged_distribution.shape
    for rec in records[1:]:
        if rec.success_series.shape != series_len or rec.averaged_distribution.shape != dist_len:
            raise ValueError("trajectory records have mismatched shapes")
    success = np.stack([rec.success_series for rec in records])
    dists = np.stack([rec.averaged_distribution for rec in records])
    n = len(records)
    if n == 1:
        std = np.zeros(series_len)
    else:
        # shift by the first run before the moment computation: identical
        # trajectories then give an exact zero std instead of float residue
        std = np.std(success - success[0], axis=0, ddof=1)
    return EnsembleResult(
        mean_success=np.mean(success, axis=0),
        std_success=std,
        mean_averaged_distribution=np.mean(dists, axis=0),
        run_count=n,
    )
