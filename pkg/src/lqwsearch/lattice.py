"""Torus geometry: vertices, directions, periodic neighbors, edge enumeration.

Vertices are (x, y) integer pairs, linearized row-major as
``index = y * side_x + x``.  The linearization is part of the output
contract and must not change.

Undirected grid edges get stable integer ids: edge ``2 * v + axis`` leaves
vertex index ``v`` in the +x (axis 0) or +y (axis 1) direction, giving
exactly 2N edges per torus.  Self-loops are not edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property

import numpy as np

Vertex = tuple[int, int]


class Direction(IntEnum):
    """Coin slots: four cardinal moves plus the stay-put self-loop."""

    PLUS_X = 0
    MINUS_X = 1
    PLUS_Y = 2
    MINUS_Y = 3
    LOOP = 4


NUM_SLOTS = 5
CARDINALS = (Direction.PLUS_X, Direction.MINUS_X, Direction.PLUS_Y, Direction.MINUS_Y)

_REVERSE = {
    Direction.PLUS_X: Direction.MINUS_X,
    Direction.MINUS_X: Direction.PLUS_X,
    Direction.PLUS_Y: Direction.MINUS_Y,
    Direction.MINUS_Y: Direction.PLUS_Y,
    Direction.LOOP: Direction.LOOP,
}

_STEP = {
    Direction.PLUS_X: (1, 0),
    Direction.MINUS_X: (-1, 0),
    Direction.PLUS_Y: (0, 1),
    Direction.MINUS_Y: (0, -1),
}


def reverse(direction: Direction) -> Direction:
    """Opposite cardinal direction; LOOP reverses to itself."""
    return _REVERSE[Direction(direction)]


@dataclass(frozen=True)
class Lattice:
    """2D toroidal grid.

    Sides below 3 are rejected: with side 2 the +x and -x neighbors
    coincide, which breaks the flip-flop pairing of arcs.
    """

    side_x: int
    side_y: int

    def __post_init__(self) -> None:
        if self.side_x < 3 or self.side_y < 3:
            raise ValueError(
                f"grid sides must be >= 3, got {self.side_x}x{self.side_y}"
            )

    @property
    def num_vertices(self) -> int:
        return self.side_x * self.side_y

    @property
    def num_edges(self) -> int:
        return 2 * self.num_vertices

    def wrap(self, x: int, y: int) -> Vertex:
        return (x % self.side_x, y % self.side_y)

    def contains(self, v: Vertex) -> bool:
        x, y = v
        return 0 <= x < self.side_x and 0 <= y < self.side_y

    def vertex_index(self, v: Vertex) -> int:
        x, y = self.wrap(*v)
        return y * self.side_x + x

    def vertex_coords(self, index: int) -> Vertex:
        return (index % self.side_x, index // self.side_x)

    def neighbor(self, v: Vertex, direction: Direction) -> Vertex:
        """Adjacent vertex across the torus; LOOP is not a grid move."""
        direction = Direction(direction)
        if direction == Direction.LOOP:
            raise ValueError("LOOP is not a grid edge direction")
        dx, dy = _STEP[direction]
        return self.wrap(v[0] + dx, v[1] + dy)

    # --- edge ids -----------------------------------------------------

    def edge_id(self, u: Vertex, w: Vertex) -> int:
        """Canonical id of the undirected edge {u, w}; raises for non-edges."""
        u = self.wrap(*u)
        w = self.wrap(*w)
        for axis, direction in ((0, Direction.PLUS_X), (1, Direction.PLUS_Y)):
            if self.neighbor(u, direction) == w:
                return 2 * self.vertex_index(u) + axis
            if self.neighbor(w, direction) == u:
                return 2 * self.vertex_index(w) + axis
        raise ValueError(f"{u} and {w} are not adjacent on {self.side_x}x{self.side_y} torus")

    def edge_endpoints(self, edge_id: int) -> tuple[Vertex, Vertex]:
        if not 0 <= edge_id < self.num_edges:
            raise ValueError(f"edge id {edge_id} out of range [0, {self.num_edges})")
        v = self.vertex_coords(edge_id // 2)
        direction = Direction.PLUS_X if edge_id % 2 == 0 else Direction.PLUS_Y
        return (v, self.neighbor(v, direction))

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        """Every undirected non-loop edge exactly once, in edge-id order."""
        return [self.edge_endpoints(e) for e in range(self.num_edges)]

    # --- cached index tables for vectorized evolution -------------------

    @cached_property
    def neighbor_table(self) -> np.ndarray:
        """shape (4, N): neighbor_table[d, v] = index of neighbor of v along d."""
        n = self.num_vertices
        table = np.empty((4, n), dtype=np.intp)
        for d in CARDINALS:
            for v in range(n):
                table[d, v] = self.vertex_index(self.neighbor(self.vertex_coords(v), d))
        return table

    @cached_property
    def edge_arcs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Per edge id, the two arcs it carries.

        Returns (dir_a, vert_a, dir_b, vert_b): edge e runs from vert_a[e]
        along dir_a[e] to vert_b[e], whose return arc is dir_b[e].
        """
        n_e = self.num_edges
        dir_a = np.empty(n_e, dtype=np.intp)
        vert_a = np.empty(n_e, dtype=np.intp)
        dir_b = np.empty(n_e, dtype=np.intp)
        vert_b = np.empty(n_e, dtype=np.intp)
        for e in range(n_e):
            u, w = self.edge_endpoints(e)
            d = Direction.PLUS_X if e % 2 == 0 else Direction.PLUS_Y
            dir_a[e] = d
            vert_a[e] = self.vertex_index(u)
            dir_b[e] = reverse(d)
            vert_b[e] = self.vertex_index(w)
        return dir_a, vert_a, dir_b, vert_b
