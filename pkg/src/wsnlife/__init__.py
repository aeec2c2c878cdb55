"""Seed-reproducible simulator for the lifetime of mobile wireless sensor networks."""

from .core import ConfigError, NetworkConfig, Rng, Role, SensorNode, generate_network
from .dynamics import CycleOutcome, move_node, step_cycle
from .geometry import (
    ConnectivityResult,
    CoverageResult,
    DisjointSet,
    area_coverage,
    build_connectivity,
    target_coverage,
)
from .lifetime import (
    CriterionKind,
    CriterionLifetime,
    DeathCondition,
    InitialTotals,
    LifetimeCriterion,
    LifetimeReport,
    NetworkSnapshot,
    alpha_coverage,
    composite_min,
    compute_lifetimes,
    coverage_and_delivery,
    death_verdict,
    default_criteria,
    evaluate_criterion,
    k_coverage,
    last_drop_cycle,
    record_data_gathering,
    sink_path_fraction,
    stopping_check,
    stopping_rule,
    surviving_fraction,
)
from .engine import (
    BatchSummary,
    CycleRecord,
    MetricStats,
    SimulationResult,
    derive_seed,
    run_batch,
    run_simulation,
)
from .cli import (
    PRESETS,
    Preset,
    config_from_mapping,
    emit_batch_summary,
    emit_report,
    emit_snapshots,
    emit_timeseries,
    load_config,
    main,
)

__version__ = "0.1.0"
