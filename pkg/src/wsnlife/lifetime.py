"""Liveliness criteria, the three-condition stopping rule, and lifetime metrics.

A liveliness criterion is a boolean predicate over one per-cycle snapshot of
the network; the accumulated lifetime z_a and total lifetime z_t of a
criterion are computed from its per-cycle truth timeline, tolerating outages
no longer than the service disruption tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .core import NetworkConfig, Role, SensorNode
from .geometry import ConnectivityResult, CoverageResult


class CriterionKind(Enum):
    FIRST_NODE_ALIVE = "first_node_alive"
    FIRST_SINK_ALIVE = "first_sink_alive"
    SURVIVING_FRACTION = "surviving_fraction"
    ANY_NODE_ALIVE = "any_node_alive"
    K_COVERAGE = "k_coverage"
    FULL_TARGET_COVERAGE = "full_target_coverage"
    FULL_AREA_COVERAGE = "full_area_coverage"
    ALPHA_COVERAGE = "alpha_coverage"
    COVERAGE_AND_DELIVERY = "coverage_and_delivery"
    SINK_PATH_FRACTION = "sink_path_fraction"
    CONNECTED_AND_COVERED = "connected_and_covered"
    COMPOSITE_MIN = "composite_min"
    STOPPING_RULE = "stopping_rule"


_FRACTION_PARAMS = ("beta", "alpha", "delivery", "theta", "c1", "c2", "c3",
                    "power_threshold", "alive_threshold", "sink_threshold")


@dataclass(frozen=True)
class LifetimeCriterion:
    """One named liveliness predicate with its constants.

    Only the parameters relevant to the kind are read; the rest keep their
    defaults. Use the factory helpers below rather than filling fields by
    hand.
    """

    kind: CriterionKind
    beta: float = 0.0
    k: int = 1
    alpha: float = 0.0
    delivery: float = 0.0
    theta: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    power_threshold: float = 0.25
    alive_threshold: float = 0.25
    sink_threshold: float = 0.05

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for name in _FRACTION_PARAMS:
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be within [0, 1], got {value}")

    @property
    def label(self) -> str:
        kind = self.kind
        name = kind.value
        if kind is CriterionKind.SURVIVING_FRACTION:
            return f"{name}({self.beta:g})"
        if kind is CriterionKind.K_COVERAGE:
            return f"{name}(k={self.k},alpha={self.alpha:g})"
        if kind is CriterionKind.ALPHA_COVERAGE:
            return f"{name}({self.alpha:g})"
        if kind is CriterionKind.COVERAGE_AND_DELIVERY:
            return f"{name}({self.alpha:g},{self.delivery:g})"
        if kind is CriterionKind.SINK_PATH_FRACTION:
            return f"{name}({self.theta:g})"
        if kind is CriterionKind.COMPOSITE_MIN:
            return f"{name}({self.c1:g},{self.c2:g},{self.c3:g})"
        return name


def surviving_fraction(beta: float) -> LifetimeCriterion:
    return LifetimeCriterion(CriterionKind.SURVIVING_FRACTION, beta=beta)


def k_coverage(k: int, alpha: float) -> LifetimeCriterion:
    return LifetimeCriterion(CriterionKind.K_COVERAGE, k=k, alpha=alpha)


def alpha_coverage(alpha: float) -> LifetimeCriterion:
    return LifetimeCriterion(CriterionKind.ALPHA_COVERAGE, alpha=alpha)


def coverage_and_delivery(alpha: float, delivery: float) -> LifetimeCriterion:
    return LifetimeCriterion(CriterionKind.COVERAGE_AND_DELIVERY, alpha=alpha, delivery=delivery)


def sink_path_fraction(theta: float) -> LifetimeCriterion:
    return LifetimeCriterion(CriterionKind.SINK_PATH_FRACTION, theta=theta)


def composite_min(c1: float, c2: float, c3: float) -> LifetimeCriterion:
    return LifetimeCriterion(CriterionKind.COMPOSITE_MIN, c1=c1, c2=c2, c3=c3)


def stopping_rule(
    power_threshold: float = 0.25,
    alive_threshold: float = 0.25,
    sink_threshold: float = 0.05,
) -> LifetimeCriterion:
    return LifetimeCriterion(
        CriterionKind.STOPPING_RULE,
        power_threshold=power_threshold,
        alive_threshold=alive_threshold,
        sink_threshold=sink_threshold,
    )


def default_criteria(config: NetworkConfig) -> list[LifetimeCriterion]:
    """The catalog evaluated per cycle when a run does not supply its own."""
    return [
        LifetimeCriterion(CriterionKind.FIRST_NODE_ALIVE),
        LifetimeCriterion(CriterionKind.FIRST_SINK_ALIVE),
        surviving_fraction(0.5),
        LifetimeCriterion(CriterionKind.ANY_NODE_ALIVE),
        k_coverage(2, 0.5),
        LifetimeCriterion(CriterionKind.FULL_TARGET_COVERAGE),
        LifetimeCriterion(CriterionKind.FULL_AREA_COVERAGE),
        alpha_coverage(0.8),
        coverage_and_delivery(0.8, 0.8),
        sink_path_fraction(0.9),
        LifetimeCriterion(CriterionKind.CONNECTED_AND_COVERED),
        composite_min(0.5, 0.5, 0.5),
        stopping_rule(config.power_threshold, config.alive_threshold, config.sink_threshold),
    ]


class DeathCondition(Enum):
    POWER_RATIO = "power_ratio"
    ALIVE_RATIO = "alive_ratio"
    SINK_RATIO = "sink_ratio"
    MAX_CYCLES = "max_cycles"


@dataclass(frozen=True)
class InitialTotals:
    """Totals captured at cycle 0, before any consumption."""

    n_sensors: int
    n_sinks: int
    total_power: float


@dataclass(frozen=True)
class NetworkSnapshot:
    """Aggregates of one per-cycle network state, as criteria see it."""

    alive_count: int
    alive_sinks: int
    total_power: float
    coverage: CoverageResult
    connectivity: ConnectivityResult


def death_verdict(
    remaining_power: float,
    alive_count: int,
    alive_sinks: int,
    initial: InitialTotals,
    power_threshold: float,
    alive_threshold: float,
    sink_threshold: float,
) -> Optional[DeathCondition]:
    """The three-condition death rule, reported in fixed order: power ratio,
    alive ratio, sink ratio. Each comparison is strict (< threshold). The
    sink condition is skipped when the network never had sinks."""
    power_ratio = remaining_power / initial.total_power if initial.total_power > 0 else 0.0
    if power_ratio < power_threshold:
        return DeathCondition.POWER_RATIO
    if alive_count / initial.n_sensors < alive_threshold:
        return DeathCondition.ALIVE_RATIO
    if initial.n_sinks > 0 and alive_sinks / initial.n_sinks < sink_threshold:
        return DeathCondition.SINK_RATIO
    return None


def stopping_check(
    nodes: list[SensorNode],
    initial_total_power: float,
    initial_n: int,
    initial_sinks: int,
    config: NetworkConfig,
) -> Optional[DeathCondition]:
    """Apply the death rule to the current node collection.

    Returns None while the network is alive, otherwise the first condition in
    order (power, alive, sinks) that holds.
    """
    remaining = sum(n.energy for n in nodes)
    alive = sum(1 for n in nodes if n.alive)
    alive_sinks = sum(1 for n in nodes if n.alive and n.role is Role.SINK)
    initial = InitialTotals(initial_n, initial_sinks, initial_total_power)
    return death_verdict(
        remaining, alive, alive_sinks, initial,
        config.power_threshold, config.alive_threshold, config.sink_threshold,
    )


def evaluate_criterion(
    criterion: LifetimeCriterion,
    snapshot: NetworkSnapshot,
    initial: InitialTotals,
) -> bool:
    """Evaluate one liveliness predicate on one snapshot.

    Fulfilment comparisons are >= their threshold; the criterion is lost when
    the quantity falls strictly below it.
    """
    cov = snapshot.coverage
    conn = snapshot.connectivity
    match criterion.kind:
        case CriterionKind.FIRST_NODE_ALIVE:
            return snapshot.alive_count == initial.n_sensors
        case CriterionKind.FIRST_SINK_ALIVE:
            return snapshot.alive_sinks == initial.n_sinks
        case CriterionKind.SURVIVING_FRACTION:
            return snapshot.alive_count / initial.n_sensors >= criterion.beta
        case CriterionKind.ANY_NODE_ALIVE:
            return snapshot.alive_count >= 1
        case CriterionKind.K_COVERAGE:
            return cov.k_covered_fraction >= criterion.alpha
        case CriterionKind.FULL_TARGET_COVERAGE:
            return cov.targets_covered == cov.targets_total
        case CriterionKind.FULL_AREA_COVERAGE:
            return cov.covered_fraction >= 1.0
        case CriterionKind.ALPHA_COVERAGE:
            return cov.covered_fraction >= criterion.alpha
        case CriterionKind.COVERAGE_AND_DELIVERY:
            return (cov.covered_fraction >= criterion.alpha
                    and conn.fraction_with_sink_path >= criterion.delivery)
        case CriterionKind.SINK_PATH_FRACTION:
            return conn.fraction_with_sink_path >= criterion.theta
        case CriterionKind.CONNECTED_AND_COVERED:
            return conn.is_fully_connected and cov.covered_fraction >= 1.0
        case CriterionKind.COMPOSITE_MIN:
            return (conn.largest_component_size >= criterion.c1 * snapshot.alive_count
                    and snapshot.alive_count >= criterion.c2 * initial.n_sensors
                    and cov.covered_fraction >= criterion.c3)
        case CriterionKind.STOPPING_RULE:
            verdict = death_verdict(
                snapshot.total_power, snapshot.alive_count, snapshot.alive_sinks, initial,
                criterion.power_threshold, criterion.alive_threshold, criterion.sink_threshold,
            )
            return verdict is None
    raise AssertionError(f"unhandled criterion kind {criterion.kind}")


def compute_lifetimes(timeline: Sequence[bool], delta_t_sd: int) -> tuple[int, int]:
    """Accumulated (z_a) and total (z_t) lifetime of one criterion timeline.

    The metrics stop at the first outage strictly longer than delta_t_sd
    cycles; an outage of exactly delta_t_sd is tolerated. z_t is the first
    cycle of the terminal outage (or the timeline length when there is none)
    and z_a counts the fulfilled cycles strictly before z_t, so z_a <= z_t.
    """
    gap = 0
    fulfilled = 0
    gap_start = 0
    fulfilled_at_gap_start = 0
    for t, ok in enumerate(timeline):
        if ok:
            gap = 0
            fulfilled += 1
        else:
            if gap == 0:
                gap_start = t
                fulfilled_at_gap_start = fulfilled
            gap += 1
            if gap > delta_t_sd:
                return fulfilled_at_gap_start, gap_start
    return fulfilled, len(timeline)


def last_drop_cycle(timeline: Sequence[bool]) -> int:
    """Hindsight metric: one past the last fulfilled cycle.

    0 when the criterion never held; the timeline length when it still held
    at the final cycle (no terminal drop within the horizon).
    """
    for t in range(len(timeline) - 1, -1, -1):
        if timeline[t]:
            return t + 1
    return 0


def record_data_gathering(connectivity: ConnectivityResult) -> int:
    """1 when every alive node can reach an alive sink this cycle, else 0.

    Recorded as a counter only, never as a death criterion."""
    return 1 if connectivity.fraction_with_sink_path >= 1.0 else 0


@dataclass(frozen=True)
class CriterionLifetime:
    """Lifetime metrics of one criterion over one run."""

    name: str
    z_a: int
    z_t: int
    last_drop_cycle: int


@dataclass(frozen=True)
class LifetimeReport:
    """Per-criterion lifetimes plus the run's death condition and counters."""

    criteria: tuple[CriterionLifetime, ...]
    death_condition: DeathCondition
    total_messages: int
    data_gathering_trips: int

    def lifetimes(self) -> dict[str, tuple[int, int]]:
        return {entry.name: (entry.z_a, entry.z_t) for entry in self.criteria}
