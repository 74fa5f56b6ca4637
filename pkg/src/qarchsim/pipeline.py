"""End-to-end benchmark pipeline: build the circuit, pin synthesis lengths,
compile per-architecture schedules, execute seeds, and aggregate sweep rows.

One Trotter step is simulated and the report is scaled by the configured
step count; steps are structurally identical, so the scaling is exact up to
pool boundary effects far below the report precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .alternatives import TransversalSchedule, transversal_schedule
from .circuit import LogicalCircuit
from .config import RunConfig
from .engine import SimReport, simulate
from .extractor import (CompiledSchedule, ModuleMap, ScheduleParams,
                        map_qubits, schedule_base, schedule_parallel_injection)
from .hamiltonians import benchmark_terms
from .resources import (CODES, CostModel, FactoryParams, Opcode,
                        default_cost_model, physical_qubits,
                        transversal_physical_qubits)
from .synthesis import synthesis_lengths
from .trotter import trotterize

CSV_HEADER = ("benchmark,architecture,factories,qubits,days,success_pct,"
              "spacetime,stalls,overhead_frac,seed_count")


@dataclass
class BenchmarkSetup:
    """Everything derived from a config that does not depend on seed or F."""

    config: RunConfig
    circuit: LogicalCircuit
    taus: list[int]
    module_map: ModuleMap
    cost: CostModel
    transversal: TransversalSchedule

    @property
    def name(self) -> str:
        return self.config.name

    @property
    def epsilon(self) -> float:
        return self.config.benchmark.precision

    @property
    def scale_factor(self) -> int:
        return self.config.scale_factor

    def total_t_per_step(self) -> int:
        return sum(self.taus)


def prepare(config: RunConfig) -> BenchmarkSetup:
    spec = config.benchmark
    terms = benchmark_terms(spec)
    dt = spec.evolution_time / spec.trotter_steps
    circuit = trotterize(terms, spec.trotter_order, steps=1, time=dt,
                         precision=spec.precision)
    pin = None
    if config.t_count_override is not None:
        pin = config.t_count_override // spec.trotter_steps
    taus = synthesis_lengths(circuit, config.synthesis, pin_total=pin)
    code = CODES[config.architecture.code]
    cost = default_cost_model(code)
    return BenchmarkSetup(
        config=config,
        circuit=circuit,
        taus=taus,
        module_map=map_qubits(circuit, code),
        cost=cost,
        transversal=transversal_schedule(circuit, taus, config.synthesis),
    )


def compile_schedule(setup: BenchmarkSetup, architecture: str,
                     factories: int) -> CompiledSchedule | TransversalSchedule:
    if architecture == "transversal":
        return setup.transversal
    params = ScheduleParams(factories=factories,
                            width_max=setup.config.architecture.width_max)
    if architecture == "extractor-base":
        return schedule_base(setup.circuit, setup.taus, setup.module_map,
                             params)
    if architecture == "extractor-parallel":
        return schedule_parallel_injection(setup.circuit, setup.taus,
                                           setup.module_map, params)
    raise ValueError(f"unknown architecture {architecture!r}")


def qubit_count(setup: BenchmarkSetup, architecture: str, factories: int) -> int:
    n = setup.circuit.num_qubits
    if architecture == "transversal":
        return transversal_physical_qubits(n, factories)
    return physical_qubits(n, setup.cost.code, factories)


def run_one(setup: BenchmarkSetup, architecture: str, factories: int,
            seed: int, collect_trace: bool = False) -> SimReport:
    schedule = compile_schedule(setup, architecture, factories)
    fparams = FactoryParams(
        count=factories,
        discard_rate=setup.config.architecture.discard_rate,
        attempt_time_ms=setup.cost.duration(Opcode.T_CULTIVATION),
    )
    return simulate(
        benchmark=setup.name,
        architecture=architecture,
        schedule=schedule,
        cost=setup.cost,
        factory_params=fparams,
        physical=qubit_count(setup, architecture, factories),
        seed=seed,
        epsilon=setup.epsilon,
        arbitrary_rotations=setup.circuit.arbitrary_rotation_count(),
        scale_factor=setup.scale_factor,
        collect_trace=collect_trace,
    )


@dataclass(frozen=True)
class SweepRow:
    benchmark: str
    architecture: str
    factories: int
    qubits: int
    days: float
    success_pct: float
    spacetime: float
    stalls: float
    overhead_frac: float
    seed_count: int

    def to_csv(self) -> str:
        return (f"{self.benchmark},{self.architecture},{self.factories},"
                f"{self.qubits},{self.days:.4f},{self.success_pct:.2f},"
                f"{self.spacetime:.6e},{self.stalls:.1f},"
                f"{self.overhead_frac:.5f},{self.seed_count}")


def aggregate(reports: list[SimReport]) -> SweepRow:
    if not reports:
        raise ValueError("cannot aggregate zero reports")
    n = len(reports)
    wall = sum(r.wall_ms for r in reports) / n
    first = reports[0]
    return SweepRow(
        benchmark=first.benchmark,
        architecture=first.architecture,
        factories=first.factories,
        qubits=first.physical_qubits,
        days=wall / 86_400_000.0,
        success_pct=100.0 * sum(r.success_probability for r in reports) / n,
        spacetime=first.physical_qubits * wall / 1000.0,
        stalls=sum(r.stall_timesteps for r in reports) / n,
        overhead_frac=sum(r.overhead_fraction for r in reports) / n,
        seed_count=n,
    )


def run_cell(setup: BenchmarkSetup, architecture: str, factories: int,
             seeds: int | None = None, base_seed: int | None = None) -> SweepRow:
    sim = setup.config.simulation
    count = seeds if seeds is not None else sim.seeds
    seed0 = base_seed if base_seed is not None else sim.base_seed
    reports = [run_one(setup, architecture, factories, seed0 + i)
               for i in range(count)]
    return aggregate(reports)


def sweep(config: RunConfig, progress=None) -> list[SweepRow]:
    setup = prepare(config)
    rows = []
    for architecture in config.architecture.architectures:
        for factories in config.architecture.factories:
            row = run_cell(setup, architecture, factories)
            rows.append(row)
            if progress is not None:
                progress(row)
    rows.sort(key=lambda r: (r.benchmark, r.architecture, r.factories))
    return rows


def write_csv(rows: list[SweepRow], path: str | Path) -> None:
    lines = [CSV_HEADER] + [row.to_csv() for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def write_markdown(rows: list[SweepRow], path: str | Path) -> None:
    header = ("| benchmark | architecture | F | qubits | days | success % "
              "| spacetime (qubit s) | stalls | overhead |")
    sep = "|---" * 9 + "|"
    lines = [header, sep]
    for r in rows:
        lines.append(f"| {r.benchmark} | {r.architecture} | {r.factories} "
                     f"| {r.qubits} | {r.days:.4f} | {r.success_pct:.2f} "
                     f"| {r.spacetime:.4e} | {r.stalls:.1f} "
                     f"| {r.overhead_frac:.5f} |")
    Path(path).write_text("\n".join(lines) + "\n")
