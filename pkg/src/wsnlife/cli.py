"""Command line front end: presets, config files, and CSV/JSON emission.

Config files are flat JSON objects whose keys are exactly the NetworkConfig
field names; unknown keys are rejected and missing keys take the defaults.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .core import ConfigError, NetworkConfig
from .engine import BatchSummary, SimulationResult, run_batch, run_simulation

_INT_FIELDS = frozenset({"n_sensors", "grid_resolution", "delta_t_sd", "max_cycles", "seed"})

TIMESERIES_FIELDS = (
    "cycle",
    "total_power",
    "alive_count",
    "dead_count",
    "alive_sinks",
    "dead_sinks",
    "covered_fraction",
    "k_covered_fraction",
    "fraction_with_sink_path",
    "messages_cumulative",
)

SNAPSHOT_FIELDS = ("phase", "id", "role", "x", "y", "energy", "alive")


@dataclasses.dataclass(frozen=True)
class Preset:
    name: str
    config: NetworkConfig


PRESETS: dict[str, Preset] = {
    "scenario1": Preset(
        "scenario1",
        NetworkConfig(n_sensors=150, width=3000.0, height=3000.0, sink_probability=0.156),
    ),
    "scenario2": Preset(
        "scenario2",
        NetworkConfig(n_sensors=100, width=2000.0, height=2000.0, sink_probability=0.10),
    ),
    "scenario3": Preset(
        "scenario3",
        NetworkConfig(n_sensors=50, width=1000.0, height=1000.0, sink_probability=0.20),
    ),
    "scenario4": Preset(
        "scenario4",
        NetworkConfig(n_sensors=50, width=1500.0, height=1500.0, sink_probability=0.20),
    ),
}


def config_from_mapping(raw: Mapping) -> NetworkConfig:
    """Build and validate a config from a flat mapping of field names."""
    known = set(NetworkConfig.field_names())
    for key in raw:
        if key not in known:
            raise ConfigError(f"unknown config key: {key}")
    kwargs = {}
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key} must be a number, got {value!r}")
        if key in _INT_FIELDS:
            if not isinstance(value, int):
                raise ConfigError(f"{key} must be an integer, got {value!r}")
            kwargs[key] = value
        else:
            kwargs[key] = float(value)
    config = NetworkConfig(**kwargs)
    config.validate()
    return config


def load_config(path) -> NetworkConfig:
    """Parse a flat JSON config file into a validated NetworkConfig."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    return config_from_mapping(raw)


def _timeseries_row(record) -> dict:
    return {
        "cycle": record.cycle,
        "total_power": record.total_power,
        "alive_count": record.alive_count,
        "dead_count": record.dead_count,
        "alive_sinks": record.alive_sinks,
        "dead_sinks": record.dead_sinks,
        "covered_fraction": record.covered_fraction,
        "k_covered_fraction": record.k_covered_fraction,
        "fraction_with_sink_path": record.fraction_with_sink_path,
        "messages_cumulative": record.messages_cumulative,
    }


def emit_timeseries(result: SimulationResult, fmt: str, path) -> None:
    """Write the per-cycle time series as CSV (reals at 6 decimals) or JSON.

    Output bytes are a pure function of the result, so equal runs emit
    byte-identical files.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unsupported timeseries format: {fmt}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if fmt == "csv":
            fh.write(",".join(TIMESERIES_FIELDS) + "\n")
            for r in result.records:
                fh.write(
                    f"{r.cycle},{r.total_power:.6f},{r.alive_count},{r.dead_count},"
                    f"{r.alive_sinks},{r.dead_sinks},{r.covered_fraction:.6f},"
                    f"{r.k_covered_fraction:.6f},{r.fraction_with_sink_path:.6f},"
                    f"{r.messages_cumulative}\n"
                )
        else:
            json.dump([_timeseries_row(r) for r in result.records], fh, indent=2)
            fh.write("\n")


def emit_snapshots(result: SimulationResult, path) -> None:
    """Write the initial and final node states as one CSV, tagged by phase."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(SNAPSHOT_FIELDS) + "\n")
        for phase, nodes in (("initial", result.initial_nodes), ("final", result.final_nodes)):
            for n in nodes:
                fh.write(
                    f"{phase},{n.id},{n.role.value},{n.x:.6f},{n.y:.6f},"
                    f"{n.energy:.6f},{str(n.alive).lower()}\n"
                )


def emit_report(result: SimulationResult, path) -> None:
    """Write the lifetime report (per-criterion z_a/z_t, death verdict, counters)."""
    report = result.report
    payload = {
        "death_condition": report.death_condition.value,
        "death_cycle": result.death_cycle,
        "total_messages": report.total_messages,
        "data_gathering_trips": report.data_gathering_trips,
        "criteria": [
            {
                "name": e.name,
                "z_a": e.z_a,
                "z_t": e.z_t,
                "last_drop_cycle": e.last_drop_cycle,
            }
            for e in report.criteria
        ],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def emit_batch_summary(summary: BatchSummary, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(dataclasses.asdict(summary), fh, indent=2)
        fh.write("\n")


def _parse_seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from exc
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text}")
    return value


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wsnlife", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--config", metavar="PATH", help="flat JSON config file")
        group.add_argument("--preset", choices=sorted(PRESETS), help="built-in scenario")
        p.add_argument("--seed", type=_parse_seed, default=None, help="seed override")
        p.add_argument("--out", default="out", metavar="DIR", help="output directory")

    run_p = sub.add_parser("run", help="run one simulation")
    add_common(run_p)
    run_p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="time series format")

    batch_p = sub.add_parser("batch", help="run seed-derived replicas and summarize")
    add_common(batch_p)
    batch_p.add_argument("--replicas", type=int, default=10, metavar="N")
    batch_p.add_argument("--workers", type=int, default=1, metavar="N",
                         help="parallel replica processes")

    sub.add_parser("presets", help="list the built-in scenarios")
    return parser


def _resolve_config(args) -> NetworkConfig:
    if args.preset is not None:
        config = PRESETS[args.preset].config
    else:
        config = load_config(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    return config


def _cmd_run(args) -> int:
    config = _resolve_config(args)
    result = run_simulation(config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    suffix = "csv" if args.format == "csv" else "json"
    emit_timeseries(result, args.format, out / f"timeseries.{suffix}")
    emit_snapshots(result, out / "snapshots.csv")
    emit_report(result, out / "report.json")
    print(
        f"{result.report.death_condition.value} after {result.death_cycle} cycles; "
        f"wrote {out}/timeseries.{suffix}, snapshots.csv, report.json"
    )
    return 0


def _cmd_batch(args) -> int:
    config = _resolve_config(args)
    if args.replicas < 1:
        raise ConfigError(f"replicas must be >= 1, got {args.replicas}")
    if args.workers < 1:
        raise ConfigError(f"workers must be >= 1, got {args.workers}")
    summary = run_batch(config, args.replicas, base_seed=config.seed, workers=args.workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_batch_summary(summary, out / "summary.json")
    conditions = ", ".join(f"{k}={v}" for k, v in sorted(summary.death_conditions.items()))
    print(
        f"{summary.replicas} replicas: death cycle mean {summary.death_cycle.mean:.2f} "
        f"median {summary.death_cycle.median:g} ({conditions}); wrote {out}/summary.json"
    )
    return 0


def _cmd_presets(_args) -> int:
    for preset in PRESETS.values():
        c = preset.config
        print(
            f"{preset.name}: n_sensors={c.n_sensors} area={c.width:g}x{c.height:g} "
            f"sink_probability={c.sink_probability:g} p_move={c.p_move:g} p_comm={c.p_comm:g}"
        )
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "batch":
            return _cmd_batch(args)
        return _cmd_presets(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
