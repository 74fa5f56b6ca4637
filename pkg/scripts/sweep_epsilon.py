"""Sweep the rotation synthesis precision and report its runtime impact.

The per-rotation T count tau grows logarithmically with 1/epsilon, so the
wall-clock of a T-bound workload should scale the same way.  This script
drops any pinned total T count from the config and lets tau drive the
budget directly, then simulates one architecture cell per grid point.
"""

from __future__ import annotations

import argparse
import dataclasses
from pathlib import Path

from qarchsim.config import load_config
from qarchsim.pipeline import prepare, run_one
from qarchsim.synthesis import synthesis_length

DEFAULT_GRID = (1e-4, 1e-6, 1e-8, 1e-10, 1e-12)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", type=Path, required=True)
    parser.add_argument("--architecture", default="extractor-base")
    parser.add_argument("--factories", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epsilon", type=float, action="append", default=None)
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    grid = tuple(args.epsilon) if args.epsilon else DEFAULT_GRID
    base = load_config(args.config)
    lines = ["epsilon,tau,t_states_per_step,days,success_pct"]
    for eps in sorted(grid, reverse=True):
        config = dataclasses.replace(
            base,
            t_count_override=None,
            benchmark=dataclasses.replace(base.benchmark, precision=eps),
        )
        setup = prepare(config)
        report = run_one(setup, args.architecture, args.factories, args.seed)
        tau = synthesis_length(eps)
        line = (f"{eps:.0e},{tau},{setup.total_t_per_step()},"
                f"{report.days:.4f},{100.0 * report.success_probability:.2f}")
        lines.append(line)
        print(line)

    if args.out is not None:
        args.out.write_text("\n".join(lines) + "\n")
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
