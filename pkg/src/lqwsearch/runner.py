"""Experiment orchestration: parameters, trajectories, ensembles, CSV export.

A trajectory is one pure-state simulation under one sampled noise sequence;
the decohered walk is approximated by averaging many independent
trajectories.  Trajectory ``i`` uses generator seed ``base_seed + i``, so a
run is fully determined by its parameters: identical invocations produce
byte-identical output files, regardless of how many worker processes are
used.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .evolution import CoinSpec, OracleSpec, search_step
from .lattice import Lattice, Vertex
from .observables import (
    EnsembleResult,
    TrajectoryRecord,
    aggregate_ensemble,
)
from .percolation import NoiseSpec, sample_mask, trajectory_rng
from .qstate import position_distribution, uniform_initial_state

ARTIFACT_VERSION = "0.1.0"
RNG_DESCRIPTION = "numpy PCG64 (default_rng); per-run seed = base_seed + run_index"


@dataclass(frozen=True)
class WalkParams:
    """Full description of one experiment; validated on construction."""

    side_x: int = 16
    side_y: int = 16
    loop_weight: float = 0.0
    break_probability: float = 0.0
    steps: int = 100
    runs: int = 1
    base_seed: int = 0
    marked: Vertex | None = None  # None -> grid center
    oracle_enabled: bool = True

    def __post_init__(self) -> None:
        lattice = Lattice(self.side_x, self.side_y)  # validates sides
        if self.loop_weight < 0:
            raise ValueError(f"loop weight must be >= 0, got {self.loop_weight}")
        if not 0.0 <= self.break_probability <= 1.0:
            raise ValueError(
                f"break probability must be in [0, 1], got {self.break_probability}"
            )
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if not 0 <= self.base_seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.marked is None:
            object.__setattr__(
                self, "marked", (self.side_x // 2, self.side_y // 2)
            )
        elif not lattice.contains(self.marked):
            raise ValueError(f"marked vertex {self.marked} not on lattice")
        object.__setattr__(self, "marked", tuple(self.marked))

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.side_x, self.side_y)

    @property
    def num_vertices(self) -> int:
        return self.side_x * self.side_y

    def to_metadata(self) -> dict:
        return {
            "side_x": self.side_x,
            "side_y": self.side_y,
            "loop_weight": self.loop_weight,
            "break_probability": self.break_probability,
            "steps": self.steps,
            "runs": self.runs,
            "base_seed": self.base_seed,
            "marked": list(self.marked),
            "oracle_enabled": self.oracle_enabled,
        }

    @classmethod
    def from_metadata(cls, data: dict) -> "WalkParams":
        data = dict(data)
        data["marked"] = tuple(data["marked"])
        return cls(**data)


@dataclass(frozen=True)
class ExperimentOutput:
    success_path: Path
    distribution_path: Path
    metadata_path: Path


def resolve_loop_weight(text: str, num_vertices: int) -> float:
    """Parse a loop-weight flag: a literal real or the token '4/N'."""
    token = text.strip().replace(" ", "")
    if token.upper() == "4/N":
        return 4.0 / num_vertices
    try:
        value = float(token)
    except ValueError:
        raise ValueError(
            f"loop weight must be a real number or '4/N', got {text!r}"
        ) from None
    return value


def run_trajectory(params: WalkParams, run_index: int) -> TrajectoryRecord:
    """Simulate one noise realization; deterministic in (params, run_index)."""
    lattice = params.lattice
    coin = CoinSpec(params.loop_weight)
    oracle = OracleSpec(params.marked) if params.oracle_enabled else None
    noise = NoiseSpec(params.break_probability, params.base_seed)
    rng = trajectory_rng(params.base_seed, run_index)

    state = uniform_initial_state(lattice, params.loop_weight)
    marked_idx = lattice.vertex_index(params.marked)
    T = params.steps

    success = np.empty(T + 1)
    success[0] = position_distribution(state)[marked_idx]
    dist_sum = np.zeros(lattice.num_vertices)
    for t in range(1, T + 1):
        mask = sample_mask(lattice, noise, rng)
        state = search_step(state, coin, oracle, lattice, mask)
        dist = position_distribution(state)
        success[t] = dist[marked_idx]
        dist_sum += dist
    return TrajectoryRecord(success_series=success, averaged_distribution=dist_sum / T)


def run_ensemble(params: WalkParams, threads: int = 1) -> EnsembleResult:
    """Run all trajectories (serially or in worker processes) and aggregate.

    Results are collected in run_index order, so the output is independent
    of scheduling.
    """
    indices = range(params.runs)
    if threads > 1 and params.runs > 1:
        with ProcessPoolExecutor(max_workers=min(threads, params.runs)) as pool:
            records = list(pool.map(run_trajectory, [params] * params.runs, indices))
    else:
        records = [run_trajectory(params, i) for i in indices]
    result = aggregate_ensemble(records)
    result.params = params
    return result


def _format(x: float) -> str:
    # repr gives the shortest decimal that round-trips the double exactly
    return repr(float(x))


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(f"{path.name}.tmp{os.getpid()}")
    try:
        tmp.write_text(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc


def write_output(result: EnsembleResult, out_dir: Path | str) -> ExperimentOutput:
    """Write success.csv, distribution.csv and meta.json into out_dir."""
    params: WalkParams = result.params
    if params is None:
        raise ValueError("result carries no parameters; run via run_ensemble")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    uniform = 1.0 / params.num_vertices

    lines = ["step,mean_success,std_success,uniform_baseline"]
    for step, (mean, std) in enumerate(zip(result.mean_success, result.std_success)):
        lines.append(f"{step},{_format(mean)},{_format(std)},{_format(uniform)}")
    success_path = out_dir / "success.csv"
    _atomic_write(success_path, "\n".join(lines) + "\n")

    lattice = params.lattice
    lines = ["x,y,mean_time_averaged_probability"]
    for idx, prob in enumerate(result.mean_averaged_distribution):
        x, y = lattice.vertex_coords(idx)
        lines.append(f"{x},{y},{_format(prob)}")
    distribution_path = out_dir / "distribution.csv"
    _atomic_write(distribution_path, "\n".join(lines) + "\n")

    meta = {
        "artifact": "lqwsearch",
        "version": ARTIFACT_VERSION,
        "rng": RNG_DESCRIPTION,
        "params": params.to_metadata(),
        "run_seeds": [params.base_seed + i for i in range(params.runs)],
    }
    metadata_path = out_dir / "meta.json"
    _atomic_write(metadata_path, json.dumps(meta, indent=2, sort_keys=True) + "\n")

    return ExperimentOutput(success_path, distribution_path, metadata_path)


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise ValueError(f"grid must look like '16x16', got {text!r}") from None


def _parse_marked(text: str) -> Vertex:
    try:
        x, y = text.split(",")
        return int(x), int(y)
    except ValueError:
        raise ValueError(f"marked vertex must look like 'x,y', got {text!r}") from None


def _parse_threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    value = int(text)
    if value < 1:
        raise ValueError(f"threads must be >= 1 or 'auto', got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lqwsearch",
        description=(
            "Lackadaisical quantum-walk spatial search on a toroidal grid "
            "with dynamic broken-link noise."
        ),
    )
    parser.add_argument("--grid", default="16x16", metavar="WxH",
                        help="grid dimensions (default 16x16)")
    parser.add_argument("--loop-weight", default="0",
                        help="self-loop weight: a real number or '4/N' (default 0)")
    parser.add_argument("--break-prob", type=float, default=0.0,
                        help="per-edge per-step break probability (default 0)")
    parser.add_argument("--steps", type=int, default=100,
                        help="number of walk steps T (default 100)")
    parser.add_argument("--runs", type=int, default=1,
                        help="independent noise realizations (default 1)")
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed; run i uses seed + i (default 0)")
    parser.add_argument("--marked", default=None, metavar="x,y",
                        help="marked vertex (default: grid center)")
    parser.add_argument("--no-oracle", action="store_true",
                        help="disable the marking oracle (free evolution)")
    parser.add_argument("--out", default="results", metavar="DIR",
                        help="output directory (default results/)")
    parser.add_argument("--threads", default="1",
                        help="worker processes for trajectories: int or 'auto'")
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        side_x, side_y = _parse_grid(args.grid)
        params = WalkParams(
            side_x=side_x,
            side_y=side_y,
            loop_weight=resolve_loop_weight(args.loop_weight, side_x * side_y),
            break_probability=args.break_prob,
            steps=args.steps,
            runs=args.runs,
            base_seed=args.seed,
            marked=_parse_marked(args.marked) if args.marked else None,
            oracle_enabled=not args.no_oracle,
        )
        threads = _parse_threads(args.threads)
        result = run_ensemble(params, threads=threads)
        output = write_output(result, args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    peak_step = int(np.argmax(result.mean_success))
    peak = result.mean_success[peak_step]
    marked_idx = params.lattice.vertex_index(params.marked)
    avg_marked = result.mean_averaged_distribution[marked_idx]
    uniform = 1.0 / params.num_vertices
    print(
        f"peak mean success {peak:.6f} at step {peak_step}; "
        f"time-averaged marked probability {avg_marked:.6f} "
        f"(uniform 1/N = {uniform:.6f}); wrote {output.success_path.parent}/"
    )
    return 0


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
