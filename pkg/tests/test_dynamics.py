import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsnlife import NetworkConfig, Rng, Role, SensorNode, move_node, step_cycle


class ScriptedRng:
    """Stand-in for Rng that replays a fixed list of uniform draws."""

    def __init__(self, values):
        self.values = list(values)

    def uniform(self, lo, hi):
        return self.values.pop(0)


def make_node(energy=10.0, role=Role.REGULAR, x=50.0, y=50.0, node_id=0):
    return SensorNode(id=node_id, role=role, x=x, y=y, energy=energy, alive=True)


def test_three_four_five_displacement():
    cfg = NetworkConfig(width=100.0, height=100.0, move_range=5.0)
    node = make_node()
    _, _, d = move_node(node, ScriptedRng([3.0, 4.0]), cfg)
    assert d == 5.0
    assert (node.x, node.y) == (53.0, 54.0)


def test_zero_displacement():
    cfg = NetworkConfig(width=100.0, height=100.0)
    node = make_node()
    _, _, d = move_node(node, ScriptedRng([0.0, 0.0]), cfg)
    assert d == 0.0
    assert (node.x, node.y) == (50.0, 50.0)


def test_clamp_charges_attempted_displacement():
    cfg = NetworkConfig(width=100.0, height=100.0)
    node = make_node(x=99.0, y=1.0)
    _, _, d = move_node(node, ScriptedRng([4.0, -3.0]), cfg)
    assert node.x == 100.0  # clamped at the boundary
    assert node.y == 0.0
    assert d == 5.0  # pre-clamp length still billed


def test_move_dead_node_is_a_contract_violation():
    node = make_node()
    node.alive = False
    node.energy = 0.0
    with pytest.raises(ValueError):
        move_node(node, Rng(1), NetworkConfig())


@given(seed=st.integers(min_value=0, max_value=2**32))
@settings(max_examples=100, deadline=None)
def test_displacement_bounded_by_corner_distance(seed):
    cfg = NetworkConfig(width=1000.0, height=1000.0, move_range=5.0)
    node = make_node(x=500.0, y=500.0)
    _, _, d = move_node(node, Rng(seed), cfg)
    assert d <= 5.0 * math.sqrt(2.0)
    assert 0.0 <= node.x <= cfg.width and 0.0 <= node.y <= cfg.height


def test_move_and_communicate_in_one_cycle():
    # gates at 0.0 always pass with p=1; draws: move-gate, dx, dy, comm-gate
    cfg = NetworkConfig(width=100.0, height=100.0, p_move=1.0, p_comm=1.0)
    node = make_node(energy=10.0)
    out = step_cycle([node], ScriptedRng([0.0, 3.0, 4.0, 0.0]), cfg)
    assert node.energy == 4.0  # 10 - 5 - 1
    assert node.alive
    assert (out.moved_count, out.comm_count, out.messages_sent) == (1, 1, 1)
    assert (out.energy_spent_move, out.energy_spent_comm) == (5.0, 1.0)
    assert out.newly_dead == 0


def test_sink_overdraft_clamps_to_zero():
    cfg = NetworkConfig(width=100.0, height=100.0, p_move=0.0, p_comm=1.0)
    node = make_node(energy=1.5, role=Role.SINK)
    out = step_cycle([node], ScriptedRng([0.9, 0.0]), cfg)
    assert node.energy == 0.0
    assert not node.alive
    assert out.newly_dead == 1
    assert out.energy_spent_comm == 2.0
    assert out.overdraft_forgiven == 0.5


def test_comm_only_drain_drops_total_by_node_count():
    cfg = NetworkConfig(
        n_sensors=10, width=100.0, height=100.0, sink_probability=0.0,
        p_move=0.0, p_comm=1.0,
    )
    nodes = [make_node(energy=5.0 + i, node_id=i) for i in range(10)]
    before = sum(n.energy for n in nodes)
    out = step_cycle(nodes, Rng(3), cfg)
    after = sum(n.energy for n in nodes)
    assert before - after == pytest.approx(10.0)
    assert out.messages_sent == 10 and out.comm_count == 10


def test_exhausted_node_dies_even_when_idle():
    cfg = NetworkConfig(p_move=0.0, p_comm=0.0, width=100.0, height=100.0)
    node = make_node(energy=0.0)
    out = step_cycle([node], ScriptedRng([0.9, 0.9]), cfg)
    assert not node.alive and node.energy == 0.0
    assert out.newly_dead == 1 and out.overdraft_forgiven == 0.0


def test_dead_nodes_are_frozen():
    cfg = NetworkConfig(width=100.0, height=100.0, p_move=1.0, p_comm=1.0)
    dead = make_node(energy=0.0, node_id=0)
    dead.alive = False
    dead.x, dead.y = 10.0, 20.0
    live = make_node(energy=50.0, node_id=1)
    rng = Rng(11)
    out = step_cycle([dead, live], rng, cfg)
    assert (dead.x, dead.y, dead.energy, dead.alive) == (10.0, 20.0, 0.0, False)
    assert out.moved_count == 1 and out.comm_count == 1


def test_messages_equal_comm_count():
    cfg = NetworkConfig(n_sensors=30, width=500.0, height=500.0)
    nodes = [make_node(energy=40.0, node_id=i, x=250.0, y=250.0) for i in range(30)]
    rng = Rng(5)
    for _ in range(20):
        out = step_cycle(nodes, rng, cfg)
        assert out.messages_sent == out.comm_count


def test_deterministic_drain_with_zero_move_range():
    # p_move = p_comm = 1 with move_range 0: each alive node loses exactly
    # its communication cost per cycle.
    cfg = NetworkConfig(
        width=100.0, height=100.0, move_range=0.0, p_move=1.0, p_comm=1.0,
    )
    nodes = [
        make_node(energy=10.0, node_id=0),
        make_node(energy=7.5, role=Role.SINK, node_id=1),
    ]
    rng = Rng(9)
    step_cycle(nodes, rng, cfg)
    assert nodes[0].energy == pytest.approx(9.0)
    assert nodes[1].energy == pytest.approx(5.5)
    step_cycle(nodes, rng, cfg)
    assert nodes[0].energy == pytest.approx(8.0)
    assert nodes[1].energy == pytest.approx(3.5)


@given(seed=st.integers(min_value=0, max_value=2**32))
@settings(max_examples=50, deadline=None)
def test_conservation_identity_across_cycles(seed):
    cfg = NetworkConfig(n_sensors=25, width=200.0, height=200.0, sink_probability=0.2)
    from wsnlife import generate_network

    rng = Rng(seed)
    nodes = generate_network(cfg, rng)
    initial = sum(n.energy for n in nodes)
    spent = 0.0
    forgiven = 0.0
    for _ in range(30):
        out = step_cycle(nodes, rng, cfg)
        spent += out.energy_spent
        forgiven += out.overdraft_forgiven
        remaining = sum(n.energy for n in nodes)
        assert remaining + spent - forgiven == pytest.approx(initial, rel=1e-9)
        assert remaining <= initial


@given(seed=st.integers(min_value=0, max_value=2**32))
@settings(max_examples=30, deadline=None)
def test_power_non_increasing_and_deaths_non_decreasing(seed):
    from wsnlife import generate_network

    cfg = NetworkConfig(n_sensors=20, width=100.0, height=100.0, p_move=0.5, p_comm=0.8)
    rng = Rng(seed)
    nodes = generate_network(cfg, rng)
    last_power = sum(n.energy for n in nodes)
    last_dead = 0
    for _ in range(40):
        step_cycle(nodes, rng, cfg)
        power = sum(n.energy for n in nodes)
        dead = sum(1 for n in nodes if not n.alive)
        assert power <= last_power
        assert dead >= last_dead
        last_power, last_dead = power, dead
