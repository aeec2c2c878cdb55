"""The simulation loop: initialize, iterate cycles, record, stop, aggregate."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .core import NetworkConfig, Rng, Role, SensorNode, generate_network
from .dynamics import CycleOutcome, step_cycle
from .geometry import area_coverage, build_connectivity
from .lifetime import (
    CriterionKind,
    CriterionLifetime,
    DeathCondition,
    InitialTotals,
    LifetimeCriterion,
    LifetimeReport,
    NetworkSnapshot,
    compute_lifetimes,
    default_criteria,
    death_verdict,
    evaluate_criterion,
    last_drop_cycle,
    record_data_gathering,
)


@dataclass(frozen=True)
class CycleRecord:
    """One row of the per-cycle time series."""

    cycle: int
    total_power: float
    alive_count: int
    dead_count: int
    alive_sinks: int
    dead_sinks: int
    covered_fraction: float
    k_covered_fraction: float
    fraction_with_sink_path: float
    messages_cumulative: int
    criterion_flags: tuple[bool, ...]


@dataclass(frozen=True)
class SimulationResult:
    """Everything one run produced.

    records holds the cycle-0 baseline through the death cycle; outcomes has
    one entry per consumption cycle (so len(outcomes) == death_cycle) and
    carries the spent/forgiven bookkeeping behind the conservation identity.
    """

    config: NetworkConfig
    criteria: tuple[LifetimeCriterion, ...]
    initial_nodes: list[SensorNode]
    final_nodes: list[SensorNode]
    records: list[CycleRecord]
    outcomes: list[CycleOutcome]
    report: LifetimeReport
    death_cycle: int


def _coverage_k(criteria: Sequence[LifetimeCriterion]) -> int:
    """The single k the per-cycle coverage is computed at (default 2).

    All k-coverage criteria of one run must agree on k because each cycle
    records exactly one k_covered_fraction.
    """
    ks = {c.k for c in criteria if c.kind is CriterionKind.K_COVERAGE}
    if len(ks) > 1:
        raise ValueError(f"k-coverage criteria disagree on k: {sorted(ks)}")
    return ks.pop() if ks else 2


def _observe(
    cycle: int,
    nodes: list[SensorNode],
    messages_cumulative: int,
    criteria: Sequence[LifetimeCriterion],
    coverage_k: int,
    config: NetworkConfig,
    initial: InitialTotals,
) -> tuple[CycleRecord, NetworkSnapshot]:
    coverage = area_coverage(nodes, config, coverage_k)
    connectivity = build_connectivity(nodes, config)
    alive = sum(1 for n in nodes if n.alive)
    alive_sinks = sum(1 for n in nodes if n.alive and n.role is Role.SINK)
    total_power = sum(n.energy for n in nodes)
    snapshot = NetworkSnapshot(alive, alive_sinks, total_power, coverage, connectivity)
    flags = tuple(evaluate_criterion(c, snapshot, initial) for c in criteria)
    record = CycleRecord(
        cycle=cycle,
        total_power=total_power,
        alive_count=alive,
        dead_count=initial.n_sensors - alive,
        alive_sinks=alive_sinks,
        dead_sinks=initial.n_sinks - alive_sinks,
        covered_fraction=coverage.covered_fraction,
        k_covered_fraction=coverage.k_covered_fraction,
        fraction_with_sink_path=connectivity.fraction_with_sink_path,
        messages_cumulative=messages_cumulative,
        criterion_flags=flags,
    )
    return record, snapshot


def run_simulation(
    config: NetworkConfig,
    criteria: Optional[Sequence[LifetimeCriterion]] = None,
) -> SimulationResult:
    """Run one seeded lifetime simulation to death (or the max_cycles cap).

    The cycle-0 record is the pre-consumption baseline; the stopping rule is
    checked after each cycle's consumption. Equal configs (seed included)
    yield field-identical results.
    """
    config.validate()
    crits = tuple(criteria) if criteria is not None else tuple(default_criteria(config))
    coverage_k = _coverage_k(crits)

    rng = Rng(config.seed)
    nodes = generate_network(config, rng)
    initial_nodes = [n.copy() for n in nodes]
    initial = InitialTotals(
        n_sensors=len(nodes),
        n_sinks=sum(1 for n in nodes if n.role is Role.SINK),
        total_power=sum(n.energy for n in nodes),
    )

    messages = 0
    trips = 0
    record, snapshot = _observe(0, nodes, messages, crits, coverage_k, config, initial)
    records = [record]
    trips += record_data_gathering(snapshot.connectivity)
    outcomes: list[CycleOutcome] = []

    death_condition = DeathCondition.MAX_CYCLES
    death_cycle = config.max_cycles
    for cycle in range(1, config.max_cycles + 1):
        outcome = step_cycle(nodes, rng, config)
        outcomes.append(outcome)
        messages += outcome.messages_sent
        record, snapshot = _observe(cycle, nodes, messages, crits, coverage_k, config, initial)
        records.append(record)
        trips += record_data_gathering(snapshot.connectivity)
        verdict = death_verdict(
            snapshot.total_power, snapshot.alive_count, snapshot.alive_sinks, initial,
            config.power_threshold, config.alive_threshold, config.sink_threshold,
        )
        if verdict is not None:
            death_condition = verdict
            death_cycle = cycle
            break

    entries = []
    for idx, crit in enumerate(crits):
        timeline = [rec.criterion_flags[idx] for rec in records]
        z_a, z_t = compute_lifetimes(timeline, config.delta_t_sd)
        entries.append(CriterionLifetime(crit.label, z_a, z_t, last_drop_cycle(timeline)))
    report = LifetimeReport(
        criteria=tuple(entries),
        death_condition=death_condition,
        total_messages=messages,
        data_gathering_trips=trips,
    )
    return SimulationResult(
        config=config,
        criteria=crits,
        initial_nodes=initial_nodes,
        final_nodes=nodes,
        records=records,
        outcomes=outcomes,
        report=report,
        death_cycle=death_cycle,
    )


@dataclass(frozen=True)
class MetricStats:
    mean: float
    std: float
    min: float
    max: float
    median: float


@dataclass(frozen=True)
class BatchSummary:
    """Order-independent aggregation of a replicated batch."""

    replicas: int
    base_seed: int
    death_cycle: MetricStats
    death_conditions: dict[str, int]
    lifetimes: dict[str, dict[str, MetricStats]]


def derive_seed(base_seed: int, index: int) -> int:
    """Seed of replica `index`: the generator's output applied index times.

    Replica 0 runs with base_seed itself, replica i with the i-fold
    iteration, so the mapping is portable to any SplitMix64 implementation.
    """
    seed = base_seed
    for _ in range(index):
        seed = Rng(seed).next_u64()
    return seed


def _replica_run(args) -> tuple[int, str, tuple[tuple[int, int], ...]]:
    config, criteria, seed = args
    result = run_simulation(replace(config, seed=seed), criteria)
    pairs = tuple((e.z_a, e.z_t) for e in result.report.criteria)
    return result.death_cycle, result.report.death_condition.value, pairs


def _stats(values: Sequence[float]) -> MetricStats:
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    ordered = sorted(values)
    mid = n // 2
    median = float(ordered[mid]) if n % 2 else (ordered[mid - 1] + ordered[mid]) / 2.0
    return MetricStats(mean, math.sqrt(var), float(min(values)), float(max(values)), median)


def run_batch(
    config: NetworkConfig,
    replicas: int,
    base_seed: Optional[int] = None,
    criteria: Optional[Sequence[LifetimeCriterion]] = None,
    workers: int = 1,
) -> BatchSummary:
    """Run seed-derived replicas and aggregate in replica order.

    Replicas share nothing; with workers > 1 they execute in parallel
    processes and the summary is identical to the sequential one because
    results are collected by replica index before reduction.
    """
    if replicas < 1:
        raise ValueError(f"replicas must be >= 1, got {replicas}")
    config.validate()
    base = config.seed if base_seed is None else base_seed
    crits = tuple(criteria) if criteria is not None else tuple(default_criteria(config))

    seeds = [base]
    for _ in range(replicas - 1):
        seeds.append(Rng(seeds[-1]).next_u64())
    jobs = [(config, crits, s) for s in seeds]

    if workers > 1:
        chunk = max(1, replicas // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_replica_run, jobs, chunksize=chunk))
    else:
        results = [_replica_run(job) for job in jobs]

    death_cycles = [r[0] for r in results]
    condition_counts: dict[str, int] = {}
    for _, condition, _ in results:
        condition_counts[condition] = condition_counts.get(condition, 0) + 1

    lifetimes: dict[str, dict[str, MetricStats]] = {}
    for idx, crit in enumerate(crits):
        z_as = [r[2][idx][0] for r in results]
        z_ts = [r[2][idx][1] for r in results]
        lifetimes[crit.label] = {"z_a": _stats(z_as), "z_t": _stats(z_ts)}

    return BatchSummary(
        replicas=replicas,
        base_seed=base,
        death_cycle=_stats(death_cycles),
        death_conditions=condition_counts,
        lifetimes=lifetimes,
    )
