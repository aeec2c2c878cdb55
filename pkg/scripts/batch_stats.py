#!/usr/bin/env python3
"""Replicate every built-in scenario many times and tabulate death-cycle
statistics and death-condition frequencies. This is the run that produced the
medians pinned in the acceptance suite (1000 replicas, base seed 424242)."""

import argparse
import sys
from pathlib import Path

from wsnlife import PRESETS, emit_batch_summary, run_batch


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--replicas", type=int, default=1000, metavar="N")
    parser.add_argument("--base-seed", type=int, default=424242)
    parser.add_argument("--workers", type=int, default=2, metavar="N")
    parser.add_argument("--out", default="out/batches", metavar="DIR")
    args = parser.parse_args()

    root = Path(args.out)
    root.mkdir(parents=True, exist_ok=True)
    header = f"{'scenario':<10} {'median':>6} {'mean':>7} {'std':>6} {'min':>4} {'max':>4}  conditions"
    print(header)
    print("-" * len(header))
    for preset in PRESETS.values():
        summary = run_batch(
            preset.config,
            replicas=args.replicas,
            base_seed=args.base_seed,
            workers=args.workers,
        )
        emit_batch_summary(summary, root / f"{preset.name}.json")
        d = summary.death_cycle
        conditions = ", ".join(f"{k}:{v}" for k, v in sorted(summary.death_conditions.items()))
        print(
            f"{preset.name:<10} {d.median:>6g} {d.mean:>7.2f} {d.std:>6.2f} "
            f"{d.min:>4g} {d.max:>4g}  {conditions}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
