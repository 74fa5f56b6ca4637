"""Alternative execution backends: transversal patch arrays and the
load/store hybrid that pairs dense qLDPC memory with a small transversal
compute region."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .circuit import LogicalCircuit, RotationKind
from .synthesis import SynthesisParams, transversal_depth_for_tau


# ---------------------------------------------------------------------------
# Transversal array: one surface patch per logical qubit, layers advance in
# lockstep, each layer's depth set by its longest Clifford+T sequence.


@dataclass(frozen=True)
class TransversalLayer:
    depth_timesteps: int
    t_states: int
    num_rotations: int


@dataclass
class TransversalSchedule:
    layers: list[TransversalLayer]

    @property
    def num_rotations(self) -> int:
        return sum(l.num_rotations for l in self.layers)

    def total_t_states(self) -> int:
        return sum(l.t_states for l in self.layers)

    def structural_timesteps(self) -> int:
        return sum(l.depth_timesteps for l in self.layers)


def transversal_schedule(circuit: LogicalCircuit, taus: list[int],
                         params: SynthesisParams | None = None) -> TransversalSchedule:
    params = params or SynthesisParams()
    if len(taus) != circuit.num_rotations:
        raise ValueError("tau list length must match rotation count")
    layers = []
    idx = 0
    for layer in circuit.layers:
        depth = 0
        t_states = 0
        for _ in layer:
            tau = taus[idx]
            idx += 1
            t_states += tau
            depth = max(depth, transversal_depth_for_tau(tau, params))
        layers.append(TransversalLayer(depth, t_states, len(layer)))
    return TransversalSchedule(layers)


# ---------------------------------------------------------------------------
# Hybrid load/store architecture. K compute patches act as a cache over the
# logical qubits held in qLDPC memory; residency is managed with a
# furthest-next-use eviction policy over the serialized rotation stream.


@dataclass(frozen=True)
class HybridConfig:
    compute_patches: int
    policy: str = "H1"
    load_timesteps: int = 2
    store_timesteps: int = 2
    exec_stretch: float = 1.4
    clifford_memory_timesteps: int = 19
    memory_inject_timesteps: int = 1
    memory_web_timesteps: int = 19
    clifford_memory_threshold: int = 4

    def __post_init__(self) -> None:
        if self.compute_patches < 1:
            raise ValueError("need at least one compute patch")
        if self.policy not in ("H1", "H2", "H3"):
            raise ValueError(f"unknown hybrid policy {self.policy!r}")


@dataclass
class HybridReport:
    config: HybridConfig
    timesteps: int = 0
    loads: int = 0
    stores: int = 0
    miss_batches: int = 0
    eviction_batches: int = 0
    in_memory_rotations: int = 0

    @property
    def patch_rotations(self) -> int:
        return self.miss_batches  # batches equal rotations with any miss


def _patch_exec_timesteps(tau: int, config: HybridConfig) -> int:
    return math.ceil(tau * config.exec_stretch) if tau > 0 else 1


def _memory_exec_timesteps(tau: int, config: HybridConfig) -> int:
    return tau * config.memory_inject_timesteps + config.memory_web_timesteps


def hybrid_schedule(circuit: LogicalCircuit, taus: list[int],
                    config: HybridConfig) -> HybridReport:
    """Serialize rotations through the compute cache and count timesteps.

    Policies: H1 routes everything through patches; H2 additionally keeps
    weight-1 Cliffords in memory when the in-memory Clifford is cheaper than
    a load/store round trip; H3 additionally allows in-memory injection for
    non-Clifford rotations whenever that beats the patch route.
    """
    ops = list(circuit.all_rotations())
    if len(taus) != len(ops):
        raise ValueError("tau list length must match rotation count")
    max_support = max((op.pauli.weight for op in ops), default=1)
    if config.compute_patches < max_support:
        raise ValueError("compute region smaller than the widest rotation")

    # Future-use positions per qubit for furthest-next-use eviction.
    future: dict[int, list[int]] = {}
    supports = []
    for i, op in enumerate(ops):
        sup = op.pauli.support()
        supports.append(sup)
        for q in sup:
            future.setdefault(q, []).append(i)
    cursor = {q: 0 for q in future}

    def next_use(q: int, now: int) -> int:
        lst = future[q]
        c = cursor[q]
        while c < len(lst) and lst[c] <= now:
            c += 1
        cursor[q] = c
        return lst[c] if c < len(lst) else len(ops) + q / 1e9

    report = HybridReport(config=config)
    cache: set[int] = set()
    K = config.compute_patches

    for i, op in enumerate(ops):
        tau = taus[i]
        sup = supports[i]
        if (config.policy in ("H2", "H3") and op.kind is RotationKind.CLIFFORD
                and len(sup) == 1
                and config.clifford_memory_timesteps < config.clifford_memory_threshold):
            report.timesteps += config.clifford_memory_timesteps
            report.in_memory_rotations += 1
            continue
        if config.policy == "H3" and op.kind is not RotationKind.CLIFFORD:
            misses = [q for q in sup if q not in cache]
            evicting = misses and len(cache) + len(misses) > K
            patch_cost = _patch_exec_timesteps(tau, config)
            if misses:
                patch_cost += (config.store_timesteps if evicting else 0) + config.load_timesteps
            if _memory_exec_timesteps(tau, config) < patch_cost:
                report.timesteps += _memory_exec_timesteps(tau, config)
                report.in_memory_rotations += 1
                continue
        misses = [q for q in sup if q not in cache]
        if misses:
            report.miss_batches += 1
            report.loads += len(misses)
            overflow = len(cache) + len(misses) - K
            if overflow > 0:
                # Evict the entries reused furthest in the future (ties: lowest id).
                candidates = sorted((q for q in cache if q not in sup),
                                    key=lambda q: (-next_use(q, i), q))
                for q in candidates[:overflow]:
                    cache.remove(q)
                report.stores += overflow
                report.eviction_batches += 1
                report.timesteps += config.store_timesteps + config.load_timesteps
            else:
                report.timesteps += config.load_timesteps
            cache.update(misses)
        report.timesteps += _patch_exec_timesteps(tau, config)
    return report


def hybrid_capacity_grid(circuit: LogicalCircuit, fraction: float = 0.75) -> list[int]:
    """Candidate compute-region sizes from the widest rotation up to a
    fraction of the register."""
    ops = list(circuit.all_rotations())
    low = max(2, max((op.pauli.weight for op in ops), default=2))
    high = max(low, int(circuit.num_qubits * fraction))
    if high <= low:
        return [low]
    count = min(12, high - low + 1)
    step = (high - low) / (count - 1)
    grid = sorted({low + round(i * step) for i in range(count)})
    return [int(k) for k in grid]
