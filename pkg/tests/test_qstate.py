import numpy as np
import pytest

from lqwsearch.lattice import Direction, Lattice
from lqwsearch.qstate import (
    WalkState,
    position_distribution,
    uniform_initial_state,
    vertex_probability,
    weighted_coin_vector,
)


def basis_state(lattice, direction, v):
    amps = np.zeros((5, lattice.num_vertices), dtype=np.complex128)
    amps[direction, lattice.vertex_index(v)] = 1.0
    return WalkState(lattice, amps)


def test_loopless_initial_amplitudes_on_16x16():
    state = uniform_initial_state(Lattice(16, 16), 0.0)
    expected = 1.0 / np.sqrt(1024.0)
    assert np.allclose(state.amplitudes[:4], expected)
    assert np.all(state.amplitudes[Direction.LOOP] == 0)


@pytest.mark.parametrize("loop_weight", [0.0, 4 / 256, 0.1, 2.0])
def test_initial_state_unit_norm(loop_weight):
    state = uniform_initial_state(Lattice(16, 16), loop_weight)
    assert abs(state.norm() - 1.0) < 1e-12


def test_loop_mass_fraction_at_headline_weight():
    # per-vertex loop share is l/(4+l); at l = 4/256 that is
    # 0.015625 / 4.015625 = 0.0038910505836575875 (hand evaluation)
    state = uniform_initial_state(Lattice(16, 16), 4 / 256)
    per_vertex = np.abs(state.amplitudes[:, 0]) ** 2
    fraction = per_vertex[Direction.LOOP] / per_vertex.sum()
    assert fraction == pytest.approx(0.0038910505836575875, abs=1e-15)


def test_negative_loop_weight_rejected():
    with pytest.raises(ValueError):
        uniform_initial_state(Lattice(4, 4), -0.1)
    with pytest.raises(ValueError):
        weighted_coin_vector(-1.0)


def test_uniform_vertex_probability():
    state = uniform_initial_state(Lattice(16, 16), 4 / 256)
    assert vertex_probability(state, (3, 7)) == pytest.approx(1 / 256, abs=1e-14)


def test_basis_state_probabilities():
    lat = Lattice(4, 4)
    state = basis_state(lat, Direction.PLUS_X, (2, 1))
    assert vertex_probability(state, (2, 1)) == 1.0
    assert vertex_probability(state, (0, 0)) == 0.0


def test_vertex_probabilities_sum_to_one():
    lat = Lattice(5, 4)
    rng = np.random.default_rng(3)
    amps = rng.normal(size=(5, 20)) + 1j * rng.normal(size=(5, 20))
    amps /= np.linalg.norm(amps)
    state = WalkState(lat, amps)
    total = sum(vertex_probability(state, lat.vertex_coords(i)) for i in range(20))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_position_distribution_matches_vertex_probability():
    lat = Lattice(4, 4)
    rng = np.random.default_rng(5)
    amps = rng.normal(size=(5, 16)) + 1j * rng.normal(size=(5, 16))
    amps /= np.linalg.norm(amps)
    state = WalkState(lat, amps)
    dist = position_distribution(state)
    assert np.all(dist >= 0)
    assert dist.sum() == pytest.approx(1.0, abs=1e-12)
    for i in range(16):
        assert dist[i] == pytest.approx(
            vertex_probability(state, lat.vertex_coords(i)), abs=1e-14
        )


def test_uniform_distribution_is_flat():
    state = uniform_initial_state(Lattice(4, 4), 0.3)
    assert np.allclose(position_distribution(state), 1 / 16)


def test_state_dump_round_trips(tmp_path):
    from lqwsearch.qstate import dump_state

    lat = Lattice(3, 3)
    state = uniform_initial_state(lat, 0.5)
    path = tmp_path / "state.csv"
    dump_state(state, path)
    rows = path.read_text().splitlines()
    assert rows[0] == "dir,x,y,re,im"
    assert len(rows) == 1 + 5 * 9
    d, x, y, re, im = rows[1].split(",")
    assert (int(d), int(x), int(y)) == (0, 0, 0)
    assert complex(float(re), float(im)) == state.amplitudes[0, 0]


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        WalkState(Lattice(4, 4), np.zeros((4, 16), dtype=np.complex128))
