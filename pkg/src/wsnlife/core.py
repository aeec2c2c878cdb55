"""Domain types, the portable deterministic PRNG, and random network generation."""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import Enum

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV53 = 2.0 ** -53


class ConfigError(ValueError):
    """A simulation parameter is missing, unknown, or out of range."""


class Role(Enum):
    REGULAR = "regular"
    SINK = "sink"


@dataclass
class SensorNode:
    """One sensor: stable id, role, position, remaining energy, alive flag.

    Position stays inside the deployment rectangle, energy never goes
    negative, and a dead node always has exactly zero energy.
    """

    id: int
    role: Role
    x: float
    y: float
    energy: float
    alive: bool = True

    def copy(self) -> "SensorNode":
        return SensorNode(self.id, self.role, self.x, self.y, self.energy, self.alive)


@dataclass(frozen=True)
class NetworkConfig:
    """Every simulation parameter, with defaults matching the standard model.

    Energy defaults: initial power uniform in [0, 100), movement costs its
    Euclidean displacement (dx, dy each uniform in [-move_range, +move_range)),
    one communication costs 1 unit for a regular sensor and 2 for a sink.
    The network counts as dead when remaining power drops below 25% of the
    initial total, alive sensors below 25%, or alive sinks below 5%.
    """

    n_sensors: int = 150
    width: float = 3000.0
    height: float = 3000.0
    sink_probability: float = 0.156
    initial_energy_max: float = 100.0
    move_range: float = 5.0
    comm_cost_regular: float = 1.0
    comm_cost_sink: float = 2.0
    p_move: float = 0.25
    p_comm: float = 0.5
    power_threshold: float = 0.25
    alive_threshold: float = 0.25
    sink_threshold: float = 0.05
    radio_range: float = 400.0
    sensing_range: float = 250.0
    grid_resolution: int = 64
    delta_t_sd: int = 0
    max_cycles: int = 10_000
    seed: int = 1

    def validate(self) -> None:
        """Raise ConfigError (naming the field) on any out-of-range value."""
        for name in ("n_sensors", "grid_resolution", "delta_t_sd", "max_cycles", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.n_sensors < 1:
            raise ConfigError(f"n_sensors must be >= 1, got {self.n_sensors}")
        if self.grid_resolution < 1:
            raise ConfigError(f"grid_resolution must be >= 1, got {self.grid_resolution}")
        if self.delta_t_sd < 0:
            raise ConfigError(f"delta_t_sd must be >= 0, got {self.delta_t_sd}")
        if self.max_cycles < 1:
            raise ConfigError(f"max_cycles must be >= 1, got {self.max_cycles}")
        if not 0 <= self.seed <= _MASK64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        for name in ("width", "height", "radio_range", "sensing_range"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"{name} must be > 0, got {value}")
        for name in ("initial_energy_max", "move_range", "comm_cost_regular", "comm_cost_sink"):
            value = getattr(self, name)
            if not value >= 0:
                raise ConfigError(f"{name} must be >= 0, got {value}")
        for name in (
            "sink_probability",
            "p_move",
            "p_comm",
            "power_threshold",
            "alive_threshold",
            "sink_threshold",
        ):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be within [0, 1], got {value}")

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))


class Rng:
    """SplitMix64 stream: the sequence is a pure function of the seed and is
    bit-identical on every platform."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform draw in [lo, hi); a degenerate interval returns lo.

        Always consumes exactly one 64-bit draw so call sequences stay
        reproducible regardless of the bounds.
        """
        if lo > hi:
            raise ValueError(f"uniform bounds reversed: lo={lo} > hi={hi}")
        u = (self.next_u64() >> 11) * _INV53
        return lo + (hi - lo) * u


def generate_network(config: NetworkConfig, rng: Rng) -> list[SensorNode]:
    """Place n_sensors nodes uniformly at random with random initial energy.

    Each node is a sink with probability sink_probability, independently.
    The per-node draw order is fixed (x, y, energy, role) so equal seeds
    reproduce field-identical networks.
    """
    config.validate()
    nodes = []
    for i in range(config.n_sensors):
        x = rng.uniform(0.0, config.width)
        y = rng.uniform(0.0, config.height)
        energy = rng.uniform(0.0, config.initial_energy_max)
        is_sink = rng.uniform(0.0, 1.0) < config.sink_probability
        role = Role.SINK if is_sink else Role.REGULAR
        nodes.append(SensorNode(id=i, role=role, x=x, y=y, energy=energy, alive=True))
    return nodes
