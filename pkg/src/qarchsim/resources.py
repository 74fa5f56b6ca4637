"""Code presets, instruction cost tables, factory nondeterminism, and accounting."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from numba import njit

_INF = 1.0e18


class Opcode(enum.Enum):
    IDLE = "IDLE"
    SHIFT_AUTOMORPHISM = "SHIFT_AUTOMORPHISM"
    IN_MODULE_MEAS = "IN_MODULE_MEAS"
    INTER_MODULE_MEAS = "INTER_MODULE_MEAS"
    T_INJECT = "T_INJECT"
    GHZ_PREP = "GHZ_PREP"
    GHZ_TEARDOWN = "GHZ_TEARDOWN"
    Z_RESET = "Z_RESET"
    ENTANGLE_X_MEAS = "ENTANGLE_X_MEAS"
    T_CULTIVATION = "T_CULTIVATION"


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    label: str = ""

    def __post_init__(self) -> None:
        if not (self.n >= self.k >= 1) or self.d < 1:
            raise ValueError("require n >= k >= 1 and d >= 1")


CODES: dict[str, CodeParams] = {
    "gross": CodeParams(144, 12, 12, "gross"),
    "two_gross": CodeParams(288, 12, 18, "two_gross"),
    "surface_d17": CodeParams(289, 1, 17, "surface_d17"),
    "color_d17": CodeParams(217, 1, 17, "color_d17"),
    "hgps": CodeParams(1922, 50, 16, "hgps"),
    "lifted_product": CodeParams(1020, 136, 20, "lifted_product"),
}


@dataclass(frozen=True)
class HardwareParams:
    """Device-level constants; instruction times are normally taken from the
    cost table, with a derivation mode for sensitivity runs."""

    gate_time_us: float = 1.0
    shuttle_speed_um_per_us: float = 0.5
    atom_spacing_um: float = 1.5
    measurement_time_ms: float = 10.0
    physical_error: float = 1e-3
    max_interaction_distance_atoms: int = 15
    coherence_time_s: float = 100.0

    def __post_init__(self) -> None:
        for name, v in self.__dict__.items():
            if v <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class InstrCost:
    time_ms: float
    error_prob: float
    time_per_module_distance_ms: float = 0.0

    def duration(self, distance: float = 0.0) -> float:
        return self.time_ms + self.time_per_module_distance_ms * distance


@dataclass(frozen=True)
class CostModel:
    """Per-instruction wall time and failure probability, plus the timestep.

    One timestep is d measurement rounds; the dominant in-module measurement
    instruction sets the step pitch used for pacing.
    """

    table: dict[Opcode, InstrCost]
    code: CodeParams

    def cost(self, op: Opcode) -> InstrCost:
        return self.table[op]

    def duration(self, op: Opcode, distance: float = 0.0) -> float:
        return self.table[op].duration(distance)

    def error(self, op: Opcode) -> float:
        return self.table[op].error_prob

    @property
    def timestep_ms(self) -> float:
        return self.table[Opcode.IN_MODULE_MEAS].time_ms

    @property
    def measurement_rounds_ms(self) -> float:
        # The useful d-rounds core of a timestep; the rest is gate/shuttle overhead.
        return self.code.d * 10.0

    def with_overrides(self, overrides: dict[Opcode, InstrCost]) -> "CostModel":
        table = dict(self.table)
        table.update(overrides)
        return replace(self, table=table)


def default_cost_model(code: CodeParams | None = None) -> CostModel:
    code = code or CODES["two_gross"]
    table = {
        Opcode.IDLE: InstrCost(182.0, 1e-20),
        Opcode.SHIFT_AUTOMORPHISM: InstrCost(182.0, 1e-15),
        Opcode.IN_MODULE_MEAS: InstrCost(183.0, 1e-11),
        Opcode.INTER_MODULE_MEAS: InstrCost(183.0, 1e-9, 0.14),
        Opcode.T_CULTIVATION: InstrCost(143.0, 1e-8),
        Opcode.T_INJECT: InstrCost(183.0, 0.0),
        Opcode.ENTANGLE_X_MEAS: InstrCost(183.0, 1e-11),
        Opcode.Z_RESET: InstrCost(183.0, 1e-11),
        Opcode.GHZ_PREP: InstrCost(183.0, 1e-9, 0.14),
        Opcode.GHZ_TEARDOWN: InstrCost(183.0, 1e-9, 0.14),
    }
    return CostModel(table, code)


def derived_cost_model(code: CodeParams, hardware: HardwareParams | None = None,
                       reference: CostModel | None = None) -> CostModel:
    """Instruction times rebuilt from d rounds of measurement plus fixed
    gate/shuttle overheads (idle-class +2 ms, measurement-class +3 ms); errors
    carried over from the reference table. Agrees with the default table
    within 2 ms at the default code."""
    hw = hardware or HardwareParams()
    ref = reference or default_cost_model(code)
    base = code.d * hw.measurement_time_ms
    table = {}
    for op, cost in ref.table.items():
        if op is Opcode.T_CULTIVATION:
            table[op] = cost
        elif op in (Opcode.IDLE, Opcode.SHIFT_AUTOMORPHISM):
            table[op] = replace(cost, time_ms=base + 2.0)
        else:
            table[op] = replace(cost, time_ms=base + 3.0)
    return CostModel(table, code)


# ---------------------------------------------------------------------------
# Factory nondeterminism


@dataclass(frozen=True)
class FactoryParams:
    count: int
    discard_rate: float = 0.8
    attempt_time_ms: float = 143.0
    buffer_depth: int = 1

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("factory count must be >= 1")
        if not 0.0 <= self.discard_rate < 1.0:
            raise ValueError("discard_rate must lie in [0, 1)")
        if self.buffer_depth != 1:
            raise ValueError("only one-deep factory buffering is modeled")

    @property
    def success_prob(self) -> float:
        return 1.0 - self.discard_rate


class FactoryState:
    """Per-factory attempt/buffer state for timestep-granular polling."""

    def __init__(self, params: FactoryParams, seed: int = 0):
        self.params = params
        self.rng = np.random.default_rng(seed)
        self.buffered = np.zeros(params.count, dtype=bool)
        self.attempts_done = 0
        self.attempt_count = 0
        self.yield_count = 0

    def poll(self, now_ms: float) -> int:
        """Advance attempts completing by ``now_ms``; return buffered count.

        Each factory completes an attempt every attempt_time_ms; a completed
        attempt yields a T state with probability 1 - discard_rate; a factory
        already holding a state discards further yields until consumed.
        """
        due = int(now_ms // self.params.attempt_time_ms)
        while self.attempts_done < due:
            hits = self.rng.random(self.params.count) < self.params.success_prob
            self.attempt_count += self.params.count
            self.yield_count += int(hits.sum())
            self.buffered |= hits
            self.attempts_done += 1
        return int(self.buffered.sum())

    def consume(self, k: int) -> None:
        idx = np.flatnonzero(self.buffered)
        if len(idx) < k:
            raise ValueError("consuming more states than buffered")
        self.buffered[idx[:k]] = False


def factory_poll(state: FactoryState, now_ms: float) -> int:
    return state.poll(now_ms)


# ---------------------------------------------------------------------------
# Event-granular pooled T-state supply used by the simulator.
#
# Factories share aligned attempt epochs at multiples of attempt_time_ms.
# A success fills that factory's one-deep buffer or is discarded if the buffer
# is full; a buffer is freed the instant its state is handed to an injection
# lane. Injection lanes are paced: one consumption occupies a lane for
# pace_ms. Events are processed in strict chronological order.


@njit(cache=True)
def _kernel_consume(succ, chunk_n0, n_next, attempt_ms, pace_ms, filled,
                    lane_free, need, acc):
    """Consume ``need`` states; acc = [stall_ms, end_ms, t_horizon].

    Returns (remaining_need, n_next, status) with status 1 when the success
    chunk is exhausted and a refill is required.
    """
    n_f = filled.shape[0]
    n_cols = succ.shape[1]
    while need > 0:
        # Pick the lane that frees first.
        lane = 0
        base = lane_free[0]
        for i in range(1, lane_free.shape[0]):
            if lane_free[i] < base:
                base = lane_free[i]
                lane = i
        # Find the oldest buffered state, if any.
        oldest = -1
        oldest_t = _INF
        for f in range(n_f):
            if filled[f] < oldest_t:
                oldest_t = filled[f]
                oldest = f
        if oldest_t >= _INF:
            # Pool empty: process epochs until one acceptance occurs.
            accepted = False
            while not accepted:
                col = n_next - chunk_n0
                if col >= n_cols:
                    return need, n_next, 1
                e_ms = (n_next + 1) * attempt_ms
                for f in range(n_f):
                    if succ[f, col] and filled[f] >= _INF:
                        filled[f] = e_ms
                        accepted = True
                n_next += 1
            # Recompute oldest after the fill.
            oldest = -1
            oldest_t = _INF
            for f in range(n_f):
                if filled[f] < oldest_t:
                    oldest_t = filled[f]
                    oldest = f
        start = base if base > oldest_t else oldest_t
        # Process every epoch up to the hand-off instant before freeing the buffer.
        while True:
            col = n_next - chunk_n0
            if col >= n_cols:
                return need, n_next, 1
            e_ms = (n_next + 1) * attempt_ms
            if e_ms > start:
                break
            for f in range(n_f):
                if succ[f, col] and filled[f] >= _INF:
                    filled[f] = e_ms
            n_next += 1
        if start > base:
            acc[0] += start - base
        filled[oldest] = _INF
        lane_free[lane] = start + pace_ms
        if lane_free[lane] > acc[1]:
            acc[1] = lane_free[lane]
        need -= 1
    return need, n_next, 0


@njit(cache=True)
def _kernel_advance(succ, chunk_n0, n_next, attempt_ms, filled, horizon):
    """Process acceptance at every epoch <= horizon; no consumption."""
    n_f = filled.shape[0]
    n_cols = succ.shape[1]
    while True:
        col = n_next - chunk_n0
        if col >= n_cols:
            return n_next, 1
        e_ms = (n_next + 1) * attempt_ms
        if e_ms > horizon:
            return n_next, 0
        for f in range(n_f):
            if succ[f, col] and filled[f] >= _INF:
                filled[f] = e_ms
        n_next += 1


class TStatePool:
    """Deterministic, seed-driven pooled T-state supply with paced lanes."""

    CHUNK = 1 << 16

    def __init__(self, params: FactoryParams, seed: int = 0):
        self.params = params
        self.rng = np.random.default_rng(seed)
        self.filled = np.full(params.count, _INF, dtype=np.float64)
        self.t_now = 0.0
        self.n_next = 0
        self.chunk_n0 = 0
        self._succ = self._draw_chunk()
        self.consumed_total = 0

    def _draw_chunk(self) -> np.ndarray:
        return (self.rng.random((self.params.count, self.CHUNK))
                < self.params.success_prob)

    def _refill(self) -> None:
        self.chunk_n0 += self.CHUNK
        self._succ = self._draw_chunk()

    def advance(self, duration_ms: float) -> None:
        """Let factories run for ``duration_ms`` with no consumption."""
        if duration_ms < 0:
            raise ValueError("duration must be nonnegative")
        horizon = self.t_now + duration_ms
        while True:
            self.n_next, status = _kernel_advance(
                self._succ, self.chunk_n0, self.n_next,
                self.params.attempt_time_ms, self.filled, horizon)
            if status == 0:
                break
            self._refill()
        self.t_now = horizon

    def consume(self, count: int, width: int = 1, pace_ms: float = 183.0) -> tuple[float, float]:
        """Consume ``count`` states on ``width`` paced lanes starting now.

        Returns (phase_duration_ms, stall_ms). The phase ends when the last
        injection completes; stall_ms totals lane time spent waiting on
        production.
        """
        if count == 0:
            return 0.0, 0.0
        if width < 1:
            raise ValueError("width must be >= 1")
        lane_free = np.full(width, self.t_now, dtype=np.float64)
        acc = np.array([0.0, self.t_now, 0.0], dtype=np.float64)
        need = count
        while True:
            need, self.n_next, status = _kernel_consume(
                self._succ, self.chunk_n0, self.n_next,
                self.params.attempt_time_ms, pace_ms,
                self.filled, lane_free, need, acc)
            if status == 0:
                break
            self._refill()
        start = self.t_now
        self.t_now = acc[1]
        self.consumed_total += count
        return self.t_now - start, acc[0]


class UnlimitedPool:
    """Idealized supply: every lane fires every pace interval, no stalls."""

    def __init__(self) -> None:
        self.t_now = 0.0
        self.consumed_total = 0

    def advance(self, duration_ms: float) -> None:
        self.t_now += duration_ms

    def consume(self, count: int, width: int = 1, pace_ms: float = 183.0) -> tuple[float, float]:
        if count == 0:
            return 0.0, 0.0
        duration = math.ceil(count / width) * pace_ms
        self.t_now += duration
        self.consumed_total += count
        return duration, 0.0


# ---------------------------------------------------------------------------
# Error ledger, success probability, and space accounting


@dataclass
class ErrorLedger:
    """Instruction counts that feed the success-probability product."""

    counts: dict[Opcode, int] = field(default_factory=dict)

    def add(self, op: Opcode, count: int = 1) -> None:
        if count:
            self.counts[op] = self.counts.get(op, 0) + count

    def scaled(self, factor: int) -> "ErrorLedger":
        return ErrorLedger({op: c * factor for op, c in self.counts.items()})

    def pairs(self, cost_model: CostModel) -> list[tuple[float, int]]:
        return [(cost_model.error(op), c) for op, c in self.counts.items()]


def success_probability(error_pairs: list[tuple[float, int]], epsilon: float = 0.0,
                        num_rotations: int = 0) -> float:
    """prod(1 - p_i) * (1 - eps)^R accumulated in log space."""
    total = 0.0
    for p, count in error_pairs:
        if not 0.0 <= p <= 1.0:
            raise ValueError("error probabilities must lie in [0, 1]")
        if count == 0 or p == 0.0:
            continue
        if p == 1.0:
            return 0.0
        total += count * math.log1p(-p)
    if num_rotations and epsilon:
        total += num_rotations * math.log1p(-epsilon)
    return math.exp(total)


@dataclass(frozen=True)
class LayoutConstants:
    """Calibrated atom counts for the space accounting."""

    per_module_atoms: int = 756
    modules_per_adapter_row: int = 8
    adapter_row_atoms: int = 756
    factory_atoms: int = 787
    surface_patch_atoms: int = 2 * 289


def physical_qubits(num_logical: int, code: CodeParams, factories: int,
                    layout: LayoutConstants | None = None) -> int:
    """Atoms for the module array: per-module blocks, one adapter row per
    group of modules beyond the first, plus factory footprints."""
    lc = layout or LayoutConstants()
    modules = math.ceil(num_logical / code.k)
    adapter_rows = math.ceil(modules / lc.modules_per_adapter_row) - 1
    return (modules * lc.per_module_atoms + adapter_rows * lc.adapter_row_atoms
            + factories * lc.factory_atoms)


def transversal_physical_qubits(num_logical: int, factories: int,
                                layout: LayoutConstants | None = None) -> int:
    lc = layout or LayoutConstants()
    return num_logical * lc.surface_patch_atoms + factories * lc.factory_atoms


def hybrid_physical_qubits(num_logical: int, code: CodeParams, compute_patches: int,
                           layout: LayoutConstants | None = None) -> int:
    """Module-array memory plus K transversal compute patches, no factories."""
    lc = layout or LayoutConstants()
    return (physical_qubits(num_logical, code, 0, lc)
            + compute_patches * lc.surface_patch_atoms)


def spacetime(qubits: int, wall_ms: float) -> float:
    """Spacetime volume in qubit-seconds."""
    return qubits * wall_ms / 1000.0
