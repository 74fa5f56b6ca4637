"""Compilation of Pauli rotations onto the module-array extractor architecture.

Rotations are executed through a per-module ancilla web: the pivot is
entangled, inter-module merges run as a balanced tree, the joint support is
measured for a fixed number of in-module rounds, then T states stream into
the serial injection lane (or a multi-lane gadget) and the pivot is reset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .circuit import LogicalCircuit, RotationKind, RotationOp
from .resources import CodeParams, CostModel, Opcode

IN_MODULE_ROUNDS = 19
GADGET_MODULE_THRESHOLD = 8
GHZ_PREP_TIMESTEPS = 1
GHZ_TEARDOWN_TIMESTEPS = 2


@dataclass(frozen=True)
class ModuleMap:
    """Assignment of logical qubits to fixed-capacity code modules."""

    num_qubits: int
    qubits_per_module: int

    def __post_init__(self) -> None:
        if self.num_qubits < 1 or self.qubits_per_module < 1:
            raise ValueError("qubit and module capacity must be positive")

    @property
    def num_modules(self) -> int:
        return math.ceil(self.num_qubits / self.qubits_per_module)

    def module_of(self, qubit: int) -> int:
        if not 0 <= qubit < self.num_qubits:
            raise ValueError(f"qubit {qubit} out of range")
        return qubit // self.qubits_per_module

    def modules_of(self, support: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted({self.module_of(q) for q in support}))


def map_qubits(circuit: LogicalCircuit, code: CodeParams) -> ModuleMap:
    return ModuleMap(circuit.num_qubits, code.k)


@dataclass(frozen=True)
class ExtractorInstr:
    """One scheduled instruction block; count repeats at the same pitch."""

    opcode: Opcode
    modules: tuple[int, ...]
    timesteps: int
    distance: float = 0.0
    count: int = 1


@dataclass(frozen=True)
class RotationJob:
    """A rotation lowered to extractor phases, ready for event simulation."""

    index: int
    layer: int
    tau: int
    kind: RotationKind
    modules: tuple[int, ...]
    pre_timesteps: int
    post_timesteps: int
    gadget_width: int = 1

    @property
    def num_modules(self) -> int:
        return len(self.modules)

    @property
    def module_span(self) -> int:
        return self.modules[-1] - self.modules[0] if self.modules else 0

    @property
    def engaged(self) -> bool:
        return self.gadget_width >= 2

    def pre_instructions(self) -> list[ExtractorInstr]:
        m = self.num_modules
        instrs = [ExtractorInstr(Opcode.ENTANGLE_X_MEAS, self.modules[:1], 1)]
        merge_rounds = math.ceil(math.log2(m)) if m > 1 else 0
        if merge_rounds:
            instrs.append(ExtractorInstr(Opcode.INTER_MODULE_MEAS, self.modules,
                                         merge_rounds, float(self.module_span),
                                         count=m - 1))
        instrs.append(ExtractorInstr(Opcode.IN_MODULE_MEAS, self.modules,
                                     IN_MODULE_ROUNDS, count=IN_MODULE_ROUNDS))
        return instrs

    def post_instructions(self) -> list[ExtractorInstr]:
        return [ExtractorInstr(Opcode.Z_RESET, self.modules[:1], 1)]

    def gadget_instructions(self, num_modules_total: int) -> list[ExtractorInstr]:
        if not self.engaged:
            return []
        span = float(num_modules_total)
        ghz_links = 3 * (self.gadget_width - 1)
        return [ExtractorInstr(Opcode.GHZ_PREP, self.modules, GHZ_PREP_TIMESTEPS,
                               span, count=ghz_links),
                ExtractorInstr(Opcode.GHZ_TEARDOWN, self.modules,
                               GHZ_TEARDOWN_TIMESTEPS, span, count=0)]


def expand_rotation(index: int, layer: int, op: RotationOp, tau: int,
                    module_map: ModuleMap, gadget_width: int = 1) -> RotationJob:
    modules = module_map.modules_of(op.pauli.support())
    m = len(modules)
    pre = 1 + (math.ceil(math.log2(m)) if m > 1 else 0) + IN_MODULE_ROUNDS
    return RotationJob(index=index, layer=layer, tau=tau, kind=op.kind,
                       modules=modules, pre_timesteps=pre, post_timesteps=1,
                       gadget_width=gadget_width)


@dataclass(frozen=True)
class ScheduleParams:
    factories: int = 1
    width_max: int | None = None
    gadget_module_threshold: int = GADGET_MODULE_THRESHOLD

    def __post_init__(self) -> None:
        if self.factories < 1:
            raise ValueError("factories must be >= 1")
        if self.width_max is not None and self.width_max < 1:
            raise ValueError("width_max must be >= 1")


def nominal_gadget_width(num_modules_total: int, params: ScheduleParams) -> int:
    """Lane budget: half the non-pivot modules feed lanes, one per buffer."""
    u = num_modules_total - 1
    width = min(u // 2 + 1, params.factories)
    if params.width_max is not None:
        width = min(width, params.width_max)
    return max(width, 1)


def engaged_span_timesteps(job_pre: int, tau: int, width: int, job_post: int) -> int:
    exec_ts = math.ceil(tau / width) if tau else 0
    return (job_pre + GHZ_PREP_TIMESTEPS + exec_ts
            + GHZ_TEARDOWN_TIMESTEPS + job_post)


def should_engage(pre_ts: int, post_ts: int, tau: int, width: int,
                  num_modules_total: int, params: ScheduleParams) -> bool:
    """Engage the multi-lane gadget only when it wins structurally.

    The engaged block runs exclusively (its web preparation and reset are not
    hidden under neighboring rotations), so the full span must beat the tau
    timesteps the serial lane would take.
    """
    u = num_modules_total - 1
    if u < params.gadget_module_threshold:
        return False
    if width < 2 or tau <= 0:
        return False
    return engaged_span_timesteps(pre_ts, tau, width, post_ts) < tau


@dataclass
class CompiledSchedule:
    """Layer-ordered rotation jobs plus the structural cost helpers."""

    architecture: str
    num_modules: int
    layers: list[list[RotationJob]]
    params: ScheduleParams

    def jobs(self):
        for layer in self.layers:
            yield from layer

    @property
    def num_rotations(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def total_t_states(self) -> int:
        return sum(job.tau for job in self.jobs())

    def structural_timesteps(self) -> int:
        """Equivalent timesteps at unconstrained T supply.

        The serial stream hides web preparation and resets behind the
        injection lane except at the run boundaries; engaged gadget blocks
        are exclusive and carry their own preparation.
        """
        jobs = list(self.jobs())
        if not jobs:
            return 0
        total = 0
        for job in jobs:
            if job.engaged:
                total += engaged_span_timesteps(job.pre_timesteps, job.tau,
                                                job.gadget_width,
                                                job.post_timesteps)
            elif job.tau > 0:
                total += job.tau
            else:
                total += job.pre_timesteps + job.post_timesteps
        if not jobs[0].engaged and jobs[0].tau > 0:
            total += jobs[0].pre_timesteps
        if not jobs[-1].engaged and jobs[-1].tau > 0:
            total += jobs[-1].post_timesteps
        return total


def _ordered_layers(circuit: LogicalCircuit, taus: list[int]) -> list[list[tuple[int, RotationOp, int]]]:
    """Within each layer, longest synthesis first, then stream order."""
    out = []
    idx = 0
    for layer in circuit.layers:
        entries = []
        for op in layer:
            entries.append((idx, op, taus[idx]))
            idx += 1
        entries.sort(key=lambda e: (-e[2], e[0]))
        out.append(entries)
    return out


def _compile(circuit: LogicalCircuit, taus: list[int], module_map: ModuleMap,
             params: ScheduleParams, architecture: str,
             allow_gadget: bool) -> CompiledSchedule:
    if len(taus) != circuit.num_rotations:
        raise ValueError("tau list length must match rotation count")
    m_total = module_map.num_modules
    layers: list[list[RotationJob]] = []
    for layer_idx, entries in enumerate(_ordered_layers(circuit, taus)):
        jobs = []
        for index, op, tau in entries:
            width = 1
            if allow_gadget:
                w_nom = nominal_gadget_width(m_total, params)
                pre = expand_rotation(index, layer_idx, op, tau, module_map).pre_timesteps
                if should_engage(pre, 1, tau, w_nom, m_total, params):
                    width = w_nom
            jobs.append(expand_rotation(index, layer_idx, op, tau, module_map,
                                        gadget_width=width))
        layers.append(jobs)
    return CompiledSchedule(architecture=architecture, num_modules=m_total,
                            layers=layers, params=params)


def schedule_base(circuit: LogicalCircuit, taus: list[int], module_map: ModuleMap,
                  params: ScheduleParams) -> CompiledSchedule:
    """Serial-injection schedule: every rotation uses the single paced lane."""
    return _compile(circuit, taus, module_map, params, "extractor-base", False)


def schedule_parallel_injection(circuit: LogicalCircuit, taus: list[int],
                                module_map: ModuleMap,
                                params: ScheduleParams) -> CompiledSchedule:
    """Gadget schedule: wide rotations may claim a multi-lane injection block."""
    return _compile(circuit, taus, module_map, params, "extractor-parallel",
                    True)
