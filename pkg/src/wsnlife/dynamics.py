"""Per-cycle mobility and energy accounting: movement, communication, death."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import NetworkConfig, Rng, Role, SensorNode


@dataclass
class CycleOutcome:
    """Bookkeeping for one cycle of consumption.

    overdraft_forgiven is the total energy below zero erased when dying
    nodes were clamped to zero; it keeps the conservation identity
    initial = remaining + spent - forgiven exact.
    """

    moved_count: int = 0
    comm_count: int = 0
    energy_spent_move: float = 0.0
    energy_spent_comm: float = 0.0
    newly_dead: int = 0
    messages_sent: int = 0
    overdraft_forgiven: float = 0.0

    @property
    def energy_spent(self) -> float:
        return self.energy_spent_move + self.energy_spent_comm


def move_node(node: SensorNode, rng: Rng, config: NetworkConfig) -> tuple[float, float, float]:
    """Displace an alive node by (dx, dy), each uniform in [-move_range, +move_range).

    The position is clamped into the deployment rectangle, but the returned
    distance d is the attempted displacement sqrt(dx^2 + dy^2): clamping
    shortens the path, not the bill.
    """
    if not node.alive:
        raise ValueError(f"cannot move dead node {node.id}")
    dx = rng.uniform(-config.move_range, config.move_range)
    dy = rng.uniform(-config.move_range, config.move_range)
    d = math.hypot(dx, dy)
    node.x = min(max(node.x + dx, 0.0), config.width)
    node.y = min(max(node.y + dy, 0.0), config.height)
    return node.x, node.y, d


def step_cycle(nodes: list[SensorNode], rng: Rng, config: NetworkConfig) -> CycleOutcome:
    """Run one cycle over all alive nodes in id order.

    Per node: with probability p_move it moves and pays the distance, with
    probability p_comm it sends one message and pays its role's cost, and if
    its energy is <= 0 afterwards it dies (energy clamped to zero). The
    per-node draw order is move-gate, (dx, dy) when moving, comm-gate. Dead
    nodes are untouched: they never move, pay, or send.
    """
    outcome = CycleOutcome()
    for node in sorted(nodes, key=lambda n: n.id):
        if not node.alive:
            continue
        if rng.uniform(0.0, 1.0) < config.p_move:
            _, _, d = move_node(node, rng, config)
            node.energy -= d
            outcome.moved_count += 1
            outcome.energy_spent_move += d
        if rng.uniform(0.0, 1.0) < config.p_comm:
            cost = config.comm_cost_sink if node.role is Role.SINK else config.comm_cost_regular
            node.energy -= cost
            outcome.comm_count += 1
            outcome.energy_spent_comm += cost
            outcome.messages_sent += 1
        if node.energy <= 0.0:
            outcome.overdraft_forgiven += max(0.0, -node.energy)
            node.energy = 0.0
            node.alive = False
            outcome.newly_dead += 1
    return outcome
