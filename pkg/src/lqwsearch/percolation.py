"""Dynamic broken-link noise: per-step random edge masks with explicit seeding.

Each undirected grid edge is broken independently with probability p,
re-sampled every step.  Both arcs of an edge always share broken/intact
status; sampling per undirected edge (never per arc) is what keeps the
masked shift unitary.

Generator: numpy PCG64 via ``default_rng``, one generator per trajectory,
seeded as ``base_seed + run_index``.  The algorithm is pinned so mask
sequences reproduce across builds and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .lattice import Lattice, Vertex


@dataclass(frozen=True)
class NoiseSpec:
    break_probability: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.break_probability <= 1.0:
            raise ValueError(
                f"break probability must be in [0, 1], got {self.break_probability}"
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class EdgeMask:
    """Set of broken undirected edges, stored as sorted unique edge ids."""

    edge_ids: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.intp))

    def __post_init__(self) -> None:
        ids = np.unique(np.asarray(self.edge_ids, dtype=np.intp))
        object.__setattr__(self, "edge_ids", ids)

    def __len__(self) -> int:
        return len(self.edge_ids)

    @classmethod
    def empty(cls) -> "EdgeMask":
        return cls()

    @classmethod
    def from_edges(
        cls, lattice: Lattice, edges: Iterable[tuple[Vertex, Vertex]]
    ) -> "EdgeMask":
        """Build a mask from (u, w) vertex pairs; non-edges are rejected."""
        ids = [lattice.edge_id(u, w) for u, w in edges]
        return cls(np.array(ids, dtype=np.intp))

    def validate(self, lattice: Lattice) -> None:
        if len(self.edge_ids) and (
            self.edge_ids[0] < 0 or self.edge_ids[-1] >= lattice.num_edges
        ):
            raise ValueError("mask references edge ids outside the lattice")


def trajectory_rng(base_seed: int, run_index: int) -> np.random.Generator:
    """The per-trajectory generator: PCG64 seeded with base_seed + run_index."""
    return np.random.default_rng(np.uint64(base_seed) + np.uint64(run_index))


def sample_mask(
    lattice: Lattice, noise: NoiseSpec, rng: np.random.Generator
) -> EdgeMask:
    """Draw one step's mask: each of the 2N edges breaks independently w.p. p."""
    draws = rng.random(lattice.num_edges)
    return EdgeMask(np.flatnonzero(draws < noise.break_probability))
