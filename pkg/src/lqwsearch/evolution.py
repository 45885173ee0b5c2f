"""Unitary building blocks of one search step: coin, masked shift, oracle.

One step is oracle(shift(coin(state))), applied in that order.  All three
operators act as O(N) tensor transforms; no 5N x 5N matrix is ever built.

Broken edges: the flip-flop swap across an intact edge is simply skipped,
leaving both arc amplitudes in place.  This is the unique unitary
completion that touches no other edge -- the shift stays a permutation of
basis states -- and the retained amplitude gets mixed into the remaining
coin slots at the next coin application.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import CARDINALS, Direction, Lattice, Vertex, reverse
from .percolation import EdgeMask
from .qstate import WalkState, weighted_coin_vector


@dataclass(frozen=True)
class CoinSpec:
    """Weighted Grover coin: reflection about the weighted coin vector."""

    loop_weight: float

    def __post_init__(self) -> None:
        if self.loop_weight < 0:
            raise ValueError(f"loop weight must be >= 0, got {self.loop_weight}")

    @property
    def axis(self) -> np.ndarray:
        return weighted_coin_vector(self.loop_weight)


@dataclass(frozen=True)
class OracleSpec:
    """Single marked vertex; the oracle negates all amplitude there."""

    marked: Vertex

    def validate(self, lattice: Lattice) -> None:
        if not lattice.contains(self.marked):
            raise ValueError(f"marked vertex {self.marked} not on lattice")


def apply_coin(state: WalkState, coin: CoinSpec) -> WalkState:
    """Per vertex, replace the coin vector a by 2<s|a>|s> - a."""
    s = coin.axis  # real
    overlap = s @ state.amplitudes  # shape (N,)
    new = 2.0 * s[:, None] * overlap[None, :] - state.amplitudes
    return WalkState(state.lattice, new)


@lru_cache(maxsize=None)
def _shift_gather(side_x: int, side_y: int) -> np.ndarray:
    """src[d, w] = flat index of the arc whose amplitude lands on (d, w)."""
    lat = Lattice(side_x, side_y)
    n = lat.num_vertices
    src = np.empty((5, n), dtype=np.intp)
    for d in CARDINALS:
        rd = reverse(d)
        # arriving at w pointing along d means leaving neighbor(w, d) along rd
        src[d] = rd * n + lat.neighbor_table[d]
    src[Direction.LOOP] = Direction.LOOP * n + np.arange(n)
    return src


def apply_shift(state: WalkState, lattice: Lattice, mask: EdgeMask) -> WalkState:
    """Flip-flop shift with broken edges held fixed.

    Across every intact edge {v, w} the arc amplitudes (d, v) and
    (reverse(d), w) swap; across every broken edge both stay put; loop
    amplitudes never move.
    """
    mask.validate(lattice)
    src = _shift_gather(lattice.side_x, lattice.side_y)
    old = state.amplitudes
    new = old.ravel()[src.ravel()].reshape(old.shape).copy()
    if len(mask):
        dir_a, vert_a, dir_b, vert_b = lattice.edge_arcs
        e = mask.edge_ids
        new[dir_a[e], vert_a[e]] = old[dir_a[e], vert_a[e]]
        new[dir_b[e], vert_b[e]] = old[dir_b[e], vert_b[e]]
    return WalkState(state.lattice, new)


def apply_oracle(state: WalkState, oracle: OracleSpec) -> WalkState:
    """Negate all five coin amplitudes at the marked vertex."""
    oracle.validate(state.lattice)
    new = state.amplitudes.copy()
    new[:, state.lattice.vertex_index(oracle.marked)] *= -1.0
    return WalkState(state.lattice, new)


def search_step(
    state: WalkState,
    coin: CoinSpec,
    oracle: OracleSpec | None,
    lattice: Lattice,
    mask: EdgeMask,
) -> WalkState:
    """One noisy search step: coin, then masked shift, then oracle.

    Pass oracle=None for free (unmarked) evolution.
    """
    state = apply_shift(apply_coin(state, coin), lattice, mask)
    if oracle is not None:
        state = apply_oracle(state, oracle)
    return state
