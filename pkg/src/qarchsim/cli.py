"""Command-line entry points.

Exit codes: 0 on success, 1 on runtime or validation failure, 2 on bad usage
(argparse). Every run-producing command takes --config and --seed so results
are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline
from .alternatives import TransversalSchedule
from .circuit import save_circuit
from .config import ConfigError, load_config
from .engine import SimReport
from .layout import InteractionGraph, anneal_placement, fixture_graph, identity_placement
from .synthesis import qualify_extractor
from .trace import write_trace

ARCH_CHOICES = ("extractor-base", "extractor-parallel", "transversal")


def _report_payload(report: SimReport) -> dict:
    return {
        "benchmark": report.benchmark,
        "architecture": report.architecture,
        "factories": report.factories,
        "seed": report.seed,
        "scale_factor": report.scale_factor,
        "wall_ms": report.wall_ms,
        "days": report.days,
        "timesteps": report.timesteps,
        "physical_qubits": report.physical_qubits,
        "success_probability": report.success_probability,
        "stall_timesteps": report.stall_timesteps,
        "overhead_fraction": report.overhead_fraction,
        "spacetime_qubit_seconds": report.spacetime_qubit_seconds,
        "t_states_consumed": report.t_states_consumed,
        "arbitrary_rotations": report.arbitrary_rotations,
        "ledger": {op.value: c for op, c in sorted(report.ledger.counts.items(),
                                                   key=lambda kv: kv[0].value)},
    }


def _cmd_generate(args) -> int:
    config = load_config(args.config)
    setup = pipeline.prepare(config)
    print(f"{config.name}: qubits={setup.circuit.num_qubits} "
          f"rotations/step={setup.circuit.num_rotations} "
          f"layers={len(setup.circuit.layers)} "
          f"t_states/step={setup.total_t_per_step()}")
    if args.dry_run:
        return 0
    if not args.out:
        print("error: --out is required unless --dry-run", file=sys.stderr)
        return 1
    save_circuit(setup.circuit, args.out)
    print(f"wrote {args.out}")
    return 0


def _schedule_payload(schedule) -> dict:
    if isinstance(schedule, TransversalSchedule):
        return {
            "architecture": "transversal",
            "structural_timesteps": schedule.structural_timesteps(),
            "total_t_states": schedule.total_t_states(),
            "layers": [{"depth_timesteps": l.depth_timesteps,
                        "t_states": l.t_states,
                        "rotations": l.num_rotations}
                       for l in schedule.layers],
        }
    return {
        "architecture": schedule.architecture,
        "num_modules": schedule.num_modules,
        "structural_timesteps": schedule.structural_timesteps(),
        "total_t_states": schedule.total_t_states(),
        "layers": [[{"index": j.index, "tau": j.tau, "width": j.gadget_width,
                     "modules": list(j.modules)} for j in layer]
                   for layer in schedule.layers],
    }


def _cmd_compile(args) -> int:
    config = load_config(args.config)
    setup = pipeline.prepare(config)
    schedule = pipeline.compile_schedule(setup, args.architecture,
                                         args.factories)
    payload = _schedule_payload(schedule)
    print(f"{config.name} {args.architecture} F={args.factories}: "
          f"{payload['structural_timesteps']} structural timesteps, "
          f"{payload['total_t_states']} T states")
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=1))
        print(f"wrote {args.out}")
    return 0


def _cmd_simulate(args) -> int:
    config = load_config(args.config)
    setup = pipeline.prepare(config)
    seed = args.seed if args.seed is not None else config.simulation.base_seed
    if args.dry_run:
        print(f"would simulate {config.name} {args.architecture} "
              f"F={args.factories} seed={seed} "
              f"(scale x{setup.scale_factor})")
        return 0
    report = pipeline.run_one(setup, args.architecture, args.factories, seed,
                              collect_trace=bool(args.trace))
    print(f"{config.name} {args.architecture} F={args.factories} seed={seed}: "
          f"{report.days:.4f} days, {report.physical_qubits} qubits, "
          f"success {100 * report.success_probability:.2f}%, "
          f"stalls {report.stall_timesteps:.0f} ts, "
          f"overhead {report.overhead_fraction:.4f}")
    if args.trace:
        write_trace(report.trace or [], args.trace)
        print(f"wrote {args.trace}")
    if args.out:
        Path(args.out).write_text(json.dumps(_report_payload(report), indent=1))
        print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    if args.seeds is not None:
        from dataclasses import replace
        config = replace(config, simulation=replace(config.simulation,
                                                    seeds=args.seeds))
    if args.dry_run:
        cells = [(a, f) for a in config.architecture.architectures
                 for f in config.architecture.factories]
        print(f"would sweep {config.name}: {len(cells)} cells x "
              f"{config.simulation.seeds} seeds")
        return 0
    rows = pipeline.sweep(config, progress=lambda r: print(r.to_csv()))
    out_dir = Path(args.out if args.out else ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    pipeline.write_csv(rows, out_dir / "sweep.csv")
    pipeline.write_markdown(rows, out_dir / "sweep.md")
    print(f"wrote {out_dir / 'sweep.csv'} and {out_dir / 'sweep.md'}")
    return 0


def _cmd_layout(args) -> int:
    if args.graph == "fixture":
        graph = fixture_graph()
    else:
        graph = InteractionGraph.load(args.graph)
    start = identity_placement(graph, args.rows, args.cols)
    before = start.max_distance(graph)
    placement = anneal_placement(graph, args.rows, args.cols, seed=args.seed,
                                 sweeps=args.sweeps)
    after = placement.max_distance(graph)
    print(f"max interaction distance: {before:.3f} -> {after:.3f} atoms")
    if args.out:
        placement.save(args.out)
        print(f"wrote {args.out}")
    return 0


def _cmd_qualify(args) -> int:
    config = load_config(args.config)
    setup = pipeline.prepare(config)
    report = qualify_extractor(setup.circuit, config.synthesis)
    print(f"{config.name}: synthesis fraction {report.synthesis_fraction:.4f} "
          f"(majority: {report.criterion_synthesis_majority}), "
          f"max beneficial depth reduction {report.max_beneficial_reduction:.4f} "
          f"(bound holds: {report.criterion_clifford_bound})")
    ok = report.criterion_synthesis_majority and report.criterion_clifford_bound
    return 0 if ok else 1


def _cmd_trace_dump(args) -> int:
    config = load_config(args.config)
    setup = pipeline.prepare(config)
    seed = args.seed if args.seed is not None else config.simulation.base_seed
    report = pipeline.run_one(setup, args.architecture, args.factories, seed,
                              collect_trace=True)
    write_trace(report.trace or [], args.out)
    print(f"wrote {args.out} ({len(report.trace or [])} records)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qarchsim",
        description="Compile and simulate Pauli-rotation benchmarks on "
                    "modular atom architectures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build the benchmark circuit")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--dry-run", action="store_true")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("compile", help="compile a schedule")
    p.add_argument("--config", required=True)
    p.add_argument("--architecture", choices=ARCH_CHOICES,
                   default="extractor-base")
    p.add_argument("--factories", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("simulate", help="run one seeded simulation")
    p.add_argument("--config", required=True)
    p.add_argument("--architecture", choices=ARCH_CHOICES,
                   default="extractor-base")
    p.add_argument("--factories", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--trace")
    p.add_argument("--dry-run", action="store_true")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="sweep architectures x factory counts")
    p.add_argument("--config", required=True)
    p.add_argument("--seeds", type=int)
    p.add_argument("--out")
    p.add_argument("--dry-run", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("layout", help="anneal a placement")
    p.add_argument("--graph", default="fixture")
    p.add_argument("--rows", type=int, default=24)
    p.add_argument("--cols", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sweeps", type=int, default=500)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_layout)

    p = sub.add_parser("qualify", help="check extractor suitability")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_qualify)

    p = sub.add_parser("trace", help="instruction traces")
    trace_sub = p.add_subparsers(dest="trace_command", required=True)
    d = trace_sub.add_parser("dump", help="simulate and dump the trace")
    d.add_argument("--config", required=True)
    d.add_argument("--architecture", choices=ARCH_CHOICES,
                   default="extractor-base")
    d.add_argument("--factories", type=int, default=1)
    d.add_argument("--seed", type=int)
    d.add_argument("--out", required=True)
    d.set_defaults(func=_cmd_trace_dump)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
