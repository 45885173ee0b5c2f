"""Walker state: complex amplitudes over coin slot x vertex.

Amplitudes are stored as a (5, N) complex128 array, coin-major
(direction stride = N), matching the documented serialization layout.
Single precision drifts visibly over 1e4 steps, so double is mandatory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import Lattice, NUM_SLOTS, Vertex


def weighted_coin_vector(loop_weight: float) -> np.ndarray:
    """Unit 5-vector with weight 1 on each cardinal slot and sqrt(l) on the loop.

    At loop_weight = 0 this is the plain 4-direction uniform coin state with
    an empty loop slot.
    """
    if loop_weight < 0:
        raise ValueError(f"loop weight must be >= 0, got {loop_weight}")
    vec = np.array([1.0, 1.0, 1.0, 1.0, np.sqrt(loop_weight)])
    return vec / np.sqrt(4.0 + loop_weight)


@dataclass
class WalkState:
    lattice: Lattice
    amplitudes: np.ndarray  # complex128, shape (5, N)

    def __post_init__(self) -> None:
        expected = (NUM_SLOTS, self.lattice.num_vertices)
        if self.amplitudes.shape != expected:
            raise ValueError(
                f"amplitude shape {self.amplitudes.shape} != {expected}"
            )
        if self.amplitudes.dtype != np.complex128:
            self.amplitudes = self.amplitudes.astype(np.complex128)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "WalkState":
        return WalkState(self.lattice, self.amplitudes.copy())


def uniform_initial_state(lattice: Lattice, loop_weight: float) -> WalkState:
    """Uniform-over-vertices product state with the weighted coin vector.

    Each vertex carries (1/sqrt(N)) times the weighted coin state, so every
    cardinal entry is 1/sqrt(N*(4+l)) and every loop entry sqrt(l/(N*(4+l))).
    This state is an exact fixed point of the oracle-free noiseless step.
    """
    coin = weighted_coin_vector(loop_weight)
    n = lattice.num_vertices
    amps = np.repeat(coin[:, None], n, axis=1).astype(np.complex128) / np.sqrt(n)
    return WalkState(lattice, amps)


def dump_state(state: WalkState, path) -> None:
    """Debug dump: one 'dir,x,y,re,im' line per amplitude, coin-major order."""
    lattice = state.lattice
    lines = ["dir,x,y,re,im"]
    for d in range(NUM_SLOTS):
        for idx in range(lattice.num_vertices):
            x, y = lattice.vertex_coords(idx)
            a = state.amplitudes[d, idx]
            lines.append(f"{d},{x},{y},{float(a.real)!r},{float(a.imag)!r}")
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def vertex_probability(state: WalkState, v: Vertex) -> float:
    """Total probability mass on vertex v (sum over coin slots)."""
    idx = state.lattice.vertex_index(v)
    col = state.amplitudes[:, idx]
    return float(np.sum(col.real**2 + col.imag**2))


def position_distribution(state: WalkState) -> np.ndarray:
    """Marginal probability per vertex, indexed by vertex linearization."""
    a = state.amplitudes
    return np.sum(a.real**2 + a.imag**2, axis=0)
