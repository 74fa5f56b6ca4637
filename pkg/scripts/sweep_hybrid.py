"""Compare memory-plus-compute-cache layouts against the module-array baseline.

For each compute-region size K and cache policy, serialize the one-step
circuit through the cache, convert timesteps to a spacetime volume with
unlimited T supply on both sides, and report the ratio to the
extractor-base volume at the same supply assumption.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from qarchsim.alternatives import HybridConfig, hybrid_capacity_grid, hybrid_schedule
from qarchsim.config import load_config
from qarchsim.extractor import ScheduleParams, schedule_base
from qarchsim.pipeline import prepare
from qarchsim.resources import CODES, hybrid_physical_qubits, physical_qubits, spacetime

POLICIES = ("H1", "H2", "H3")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", type=Path, required=True)
    parser.add_argument("--capacity", type=int, action="append", default=None,
                        help="explicit compute-region sizes (repeatable)")
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    config = load_config(args.config)
    setup = prepare(config)
    code = CODES[config.architecture.code]
    timestep_ms = setup.cost.timestep_ms

    # Baseline: module array with unconstrained T supply, zero factories in
    # the atom count so both sides price only the computation itself.
    base = schedule_base(setup.circuit, setup.taus, setup.module_map,
                         ScheduleParams(factories=1))
    base_qubits = physical_qubits(setup.circuit.num_qubits, code, 0)
    base_ts = base.structural_timesteps()
    base_volume = spacetime(base_qubits, base_ts * timestep_ms * setup.scale_factor)
    print(f"baseline: {base_ts} timesteps, {base_qubits} atoms, "
          f"{base_volume:.4e} qubit-seconds")

    grid = sorted(set(args.capacity)) if args.capacity else hybrid_capacity_grid(setup.circuit)
    lines = ["policy,capacity,timesteps,loads,stores,atoms,spacetime,ratio_to_base"]
    for policy in POLICIES:
        for k in grid:
            report = hybrid_schedule(setup.circuit, setup.taus,
                                     HybridConfig(compute_patches=k, policy=policy))
            atoms = hybrid_physical_qubits(setup.circuit.num_qubits, code, k)
            volume = spacetime(atoms, report.timesteps * timestep_ms * setup.scale_factor)
            line = (f"{policy},{k},{report.timesteps},{report.loads},"
                    f"{report.stores},{atoms},{volume:.6e},{volume / base_volume:.3f}")
            lines.append(line)
            print(line)

    if args.out is not None:
        args.out.write_text("\n".join(lines) + "\n")
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
