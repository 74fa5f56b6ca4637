"""Event-granular execution of compiled schedules against the T-state pool.

Timing model: the serial injection lane is the pacing resource. Measurement
webs for queued rotations are prepared concurrently with the running
injection stream, so only the first preparation and the final reset are
exposed; engaged multi-lane gadget blocks run exclusively and pay their own
preparation and teardown. Module busy time counts the intervals in which a
module holds the pacing resource; concurrent web preparation appears in the
error ledger but not in the busy accounting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .alternatives import TransversalSchedule
from .circuit import LogicalCircuit
from .extractor import CompiledSchedule, ExtractorInstr, RotationJob
from .resources import (CostModel, ErrorLedger, FactoryParams, Opcode,
                        TStatePool, UnlimitedPool, spacetime,
                        success_probability)

MS_PER_DAY = 86_400_000.0
TRANSVERSAL_TIMESTEP_MS = 173.0
TRANSVERSAL_IDLE_MS = 172.0


@dataclass(frozen=True)
class TraceRecord:
    """One scheduled instruction block with issue-order wall timestamps."""

    t_start_ms: float
    duration_ms: float
    opcode: str
    modules: tuple[int, ...]
    distance: float
    count: int

    @property
    def timestep_start(self) -> float:
        return self.t_start_ms / 183.0


@dataclass
class SimReport:
    benchmark: str
    architecture: str
    factories: int
    seed: int
    scale_factor: int
    wall_ms: float
    timesteps: float
    physical_qubits: int
    success_probability: float
    stall_ms: float
    overhead_fraction: float
    t_states_consumed: int
    arbitrary_rotations: int
    module_busy_ms: dict[int, float] = field(default_factory=dict)
    ledger: ErrorLedger = field(default_factory=ErrorLedger)
    trace: list[TraceRecord] | None = None

    @property
    def days(self) -> float:
        return self.wall_ms / MS_PER_DAY

    @property
    def spacetime_qubit_seconds(self) -> float:
        return spacetime(self.physical_qubits, self.wall_ms)

    @property
    def stall_timesteps(self) -> float:
        return self.stall_ms / 183.0

    @property
    def module_utilization(self) -> dict[int, float]:
        if self.wall_ms <= 0:
            return {m: 0.0 for m in self.module_busy_ms}
        return {m: b / self.wall_ms for m, b in self.module_busy_ms.items()}


class _Accumulator:
    """Shared wall/ledger/trace bookkeeping for one simulated step."""

    def __init__(self, cost: CostModel, collect_trace: bool):
        self.cost = cost
        self.ledger = ErrorLedger()
        self.busy: dict[int, float] = {}
        self.overhead_ms = 0.0
        self.stall_ms = 0.0
        self.wall_ms = 0.0
        self.t_consumed = 0
        self.trace: list[TraceRecord] | None = [] if collect_trace else None
        self.core_ms = cost.measurement_rounds_ms

    def record(self, t_start: float, duration: float, opcode: Opcode,
               modules: tuple[int, ...], distance: float, count: int) -> None:
        if self.trace is not None:
            self.trace.append(TraceRecord(t_start, duration, opcode.value,
                                          modules, distance, count))

    def charge_instr(self, instr: ExtractorInstr, t_start: float,
                     exposed: bool) -> float:
        """Ledger plus, for wall-exposed blocks, busy and overhead time.

        Hidden blocks run concurrently with the injection stream: they count
        toward the error ledger but occupy no wall time.
        """
        per_ts = self.cost.duration(instr.opcode, instr.distance)
        duration = instr.timesteps * per_ts
        self.ledger.add(instr.opcode, instr.count)
        self.record(t_start, duration, instr.opcode, instr.modules,
                    instr.distance, instr.count)
        if exposed:
            self.overhead_ms += instr.timesteps * (per_ts - self.core_ms)
            for mod in instr.modules:
                self.busy[mod] = self.busy.get(mod, 0.0) + duration
        return duration

    def charge_injection(self, job: RotationJob, t_start: float,
                         duration: float, width: int) -> None:
        """Wall decomposition of one injection phase: the paced share is
        tau/width injection slots, the remainder is supply stall."""
        pace = self.cost.duration(Opcode.T_INJECT)
        idle = self.cost.duration(Opcode.IDLE)
        self.ledger.add(Opcode.T_CULTIVATION, job.tau)
        active = min(duration, job.tau * pace / width)
        stall = duration - active
        self.stall_ms += stall
        self.overhead_ms += active * (pace - self.core_ms) / pace
        self.overhead_ms += stall * (idle - self.core_ms) / idle
        for mod in job.modules:
            self.busy[mod] = self.busy.get(mod, 0.0) + active
        self.record(t_start, duration, Opcode.T_INJECT, job.modules, 0.0,
                    job.tau)
        if stall > 0:
            idle_count = int(round(stall / idle)) * job.num_modules
            self.ledger.add(Opcode.IDLE, idle_count)
            self.record(t_start, stall, Opcode.IDLE, job.modules, 0.0,
                        idle_count)


def _make_pool(factory_params: FactoryParams | None, seed: int):
    if factory_params is None:
        return UnlimitedPool()
    return TStatePool(factory_params, seed)


def run_extractor_schedule(schedule: CompiledSchedule, cost: CostModel,
                           factory_params: FactoryParams | None, seed: int,
                           collect_trace: bool = False) -> _Accumulator:
    """Execute one step of an extractor schedule; returns the accumulator
    with pool wall time stored on ``acc.wall_ms``."""
    pool = _make_pool(factory_params, seed)
    acc = _Accumulator(cost, collect_trace)
    jobs = list(schedule.jobs())
    width_cap = factory_params.count if factory_params else None

    for pos, job in enumerate(jobs):
        first = pos == 0
        last = pos == len(jobs) - 1
        if job.engaged:
            pre_ms = 0.0
            for instr in job.pre_instructions():
                pre_ms += acc.charge_instr(instr, pool.t_now + pre_ms, True)
            gadget = job.gadget_instructions(schedule.num_modules)
            prep, teardown = gadget[0], gadget[1]
            pre_ms += acc.charge_instr(prep, pool.t_now + pre_ms, True)
            pool.advance(pre_ms)
            dur, _ = pool.consume(job.tau, job.gadget_width)
            acc.charge_injection(job, pool.t_now - dur, dur, job.gadget_width)
            post_ms = acc.charge_instr(teardown, pool.t_now, True)
            for instr in job.post_instructions():
                post_ms += acc.charge_instr(instr, pool.t_now + post_ms, True)
            pool.advance(post_ms)
            continue
        if job.tau == 0:
            # Web-only rotation: nothing to inject, the web is exposed.
            span = 0.0
            for instr in job.pre_instructions() + job.post_instructions():
                span += acc.charge_instr(instr, pool.t_now + span, True)
            pool.advance(span)
            continue
        if first:
            pre_ms = 0.0
            for instr in job.pre_instructions():
                pre_ms += acc.charge_instr(instr, pool.t_now + pre_ms, True)
            pool.advance(pre_ms)
        else:
            # Hidden under the running stream: ledger only, no wall time.
            for instr in job.pre_instructions():
                acc.charge_instr(instr, pool.t_now, False)
        width = job.gadget_width
        if width_cap is not None:
            width = min(width, width_cap)
        dur, _ = pool.consume(job.tau, width)
        acc.charge_injection(job, pool.t_now - dur, dur, width)
        if last:
            post_ms = 0.0
            for instr in job.post_instructions():
                post_ms += acc.charge_instr(instr, pool.t_now + post_ms, True)
            pool.advance(post_ms)
        else:
            for instr in job.post_instructions():
                acc.charge_instr(instr, pool.t_now, False)

    acc.wall_ms = pool.t_now
    acc.t_consumed = pool.consumed_total
    return acc


def run_transversal_schedule(schedule: TransversalSchedule, cost: CostModel,
                             factory_params: FactoryParams | None, seed: int,
                             collect_trace: bool = False) -> _Accumulator:
    """Lockstep layers on surface patches; T supply pulls at full width."""
    pool = _make_pool(factory_params, seed)
    acc = _Accumulator(cost, collect_trace)
    width = factory_params.count if factory_params else 1
    ts_ms = TRANSVERSAL_TIMESTEP_MS

    for layer in schedule.layers:
        start = pool.t_now
        depth_ms = layer.depth_timesteps * ts_ms
        if factory_params is None:
            dur, stall = pool.consume(layer.t_states,
                                      width=max(layer.t_states, 1))
        else:
            dur, stall = pool.consume(layer.t_states, width=width)
        span = max(depth_ms, dur)
        if span > dur:
            pool.advance(span - dur)
        acc.ledger.add(Opcode.T_CULTIVATION, layer.t_states)
        active = min(depth_ms, span)
        slack = span - active
        acc.stall_ms += slack
        acc.overhead_ms += active * (3.0 / ts_ms)
        acc.overhead_ms += slack * (2.0 / TRANSVERSAL_IDLE_MS)
        acc.record(start, span, Opcode.T_INJECT, (), 0.0, layer.t_states)

    acc.wall_ms = pool.t_now
    acc.t_consumed = pool.consumed_total
    return acc


def simulate(benchmark: str, architecture: str, schedule, cost: CostModel,
             factory_params: FactoryParams | None, physical: int, seed: int,
             epsilon: float, arbitrary_rotations: int, scale_factor: int = 1,
             collect_trace: bool = False) -> SimReport:
    """Run one compiled schedule and assemble the scaled report."""
    if architecture == "transversal":
        acc = run_transversal_schedule(schedule, cost, factory_params, seed,
                                       collect_trace)
    else:
        acc = run_extractor_schedule(schedule, cost, factory_params, seed,
                                     collect_trace)
    scale = scale_factor
    ledger = acc.ledger.scaled(scale)
    rotations = arbitrary_rotations * scale
    success = success_probability(ledger.pairs(cost), epsilon, rotations)
    wall = acc.wall_ms * scale
    ts_ms = TRANSVERSAL_TIMESTEP_MS if architecture == "transversal" else cost.timestep_ms
    overhead_fraction = (acc.overhead_ms * scale / wall) if wall > 0 else 0.0
    return SimReport(
        benchmark=benchmark,
        architecture=architecture,
        factories=factory_params.count if factory_params else 0,
        seed=seed,
        scale_factor=scale,
        wall_ms=wall,
        timesteps=wall / ts_ms,
        physical_qubits=physical,
        success_probability=success,
        stall_ms=acc.stall_ms * scale,
        overhead_fraction=overhead_fraction,
        t_states_consumed=acc.t_consumed * scale,
        arbitrary_rotations=rotations,
        module_busy_ms={m: b * scale for m, b in acc.busy.items()},
        ledger=ledger,
        trace=acc.trace,
    )
