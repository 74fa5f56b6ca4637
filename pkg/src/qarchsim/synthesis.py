"""Clifford+T synthesis cost model and the extractor qualification analyzer."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import LogicalCircuit, RotationKind, RotationOp


@dataclass(frozen=True)
class SynthesisParams:
    """Knobs for the rotation-synthesis cost model.

    t_per_rotation_coefficient scales the log(1/eps) T-count law.
    clifford_per_t_ratio is the Clifford:T ratio of synthesized sequences and
    clifford_depth_reduction the fraction of that Clifford depth a transversal
    backend can compress away.
    """

    t_per_rotation_coefficient: float = 3.0
    clifford_per_t_ratio: float = 1.0
    clifford_depth_reduction: float = 0.60

    def __post_init__(self) -> None:
        if self.t_per_rotation_coefficient <= 0:
            raise ValueError("t_per_rotation_coefficient must be positive")
        if self.clifford_per_t_ratio < 0:
            raise ValueError("clifford_per_t_ratio must be nonnegative")
        if not 0.0 <= self.clifford_depth_reduction <= 1.0:
            raise ValueError("clifford_depth_reduction must lie in [0, 1]")


def _ceil9(x: float) -> int:
    # Round to 9 decimals first so float dust cannot push ceil up a notch.
    return math.ceil(round(x, 9))


def synthesis_length(precision: float, params: SynthesisParams | None = None,
                     kind: RotationKind = RotationKind.ARBITRARY) -> int:
    """T gates needed to synthesize one rotation to the given precision."""
    if kind is RotationKind.CLIFFORD:
        return 0
    if kind is RotationKind.T:
        return 1
    if not 0.0 < precision < 1.0:
        raise ValueError("precision must lie in (0, 1)")
    p = params or SynthesisParams()
    return _ceil9(p.t_per_rotation_coefficient * math.log2(1.0 / precision))


def transversal_depth_for_tau(tau: int, params: SynthesisParams | None = None) -> int:
    """Timesteps for one rotation on a transversal backend: T layers plus the
    compressed Clifford layers interleaving them."""
    p = params or SynthesisParams()
    factor = 1.0 + p.clifford_per_t_ratio * (1.0 - p.clifford_depth_reduction)
    return _ceil9(tau * factor)


def transversal_rotation_depth(precision: float, params: SynthesisParams | None = None) -> int:
    return transversal_depth_for_tau(synthesis_length(precision, params), params)


def rotation_t_cost(op: RotationOp, params: SynthesisParams | None = None) -> int:
    return synthesis_length(op.precision, params, op.kind)


def synthesis_lengths(circuit: LogicalCircuit, params: SynthesisParams | None = None,
                      pin_total: int | None = None) -> list[int]:
    """Per-rotation T counts in layer-flattened order.

    With ``pin_total`` the ARBITRARY rotations' counts are apportioned so they
    sum to exactly that total (largest-remainder on the unpinned weights),
    which pins a whole run to an externally specified T budget consistently
    across every backend. CLIFFORD/T rotations keep their fixed costs.
    """
    ops = circuit.all_rotations()
    base = [rotation_t_cost(op, params) for op in ops]
    if pin_total is None:
        return base
    arb = [i for i, op in enumerate(ops) if op.kind is RotationKind.ARBITRARY]
    fixed = sum(base[i] for i, op in enumerate(ops) if op.kind is not RotationKind.ARBITRARY)
    target = pin_total - fixed
    if target < 0:
        raise ValueError("pin_total smaller than the fixed T cost of T-kind rotations")
    if not arb:
        if target != 0:
            raise ValueError("pin_total cannot be met: no ARBITRARY rotations to scale")
        return base
    weight_sum = sum(base[i] for i in arb)
    if weight_sum == 0:
        raise ValueError("cannot apportion a pinned total over zero-weight rotations")
    out = list(base)
    quotas = [(target * base[i]) / weight_sum for i in arb]
    floors = [int(q) for q in quotas]
    remainder = target - sum(floors)
    order = sorted(range(len(arb)), key=lambda j: (-(quotas[j] - floors[j]), j))
    bump = set(order[:remainder])
    for j, i in enumerate(arb):
        out[i] = floors[j] + (1 if j in bump else 0)
    return out


@dataclass(frozen=True)
class QualificationReport:
    """Outcome of the two extractor-qualification checks."""

    synthesis_fraction: float
    criterion_synthesis_majority: bool
    clifford_depth_reduction: float
    max_beneficial_reduction: float
    criterion_clifford_bound: bool
    total_t: int
    overhead_timesteps: int


def qualify_extractor(circuit: LogicalCircuit, params: SynthesisParams | None = None,
                      module_capacity: int = 12, in_module_timesteps: int = 19) -> QualificationReport:
    """Report (1) the fraction of compiled time spent on rotation synthesis,
    met when it is the majority, and (2) whether the configured Clifford depth
    reduction stays below the level at which a transversal backend would beat
    the per-rotation extractor overhead."""
    p = params or SynthesisParams()
    total_t = 0
    overhead = 0
    for op in circuit.all_rotations():
        tau = rotation_t_cost(op, p)
        total_t += tau
        modules = {q // module_capacity for q in op.pauli.support()}
        m = len(modules)
        if op.kind is RotationKind.CLIFFORD and m == 1:
            overhead += in_module_timesteps
        else:
            overhead += 1 + math.ceil(math.log2(m)) + in_module_timesteps + 1 if m > 1 else (
                2 + in_module_timesteps)
    denom = total_t + overhead
    fraction = total_t / denom if denom else 0.0
    rotations = max(circuit.num_rotations, 1)
    mean_overhead = overhead / rotations
    mean_tau = total_t / rotations
    if mean_tau > 0 and p.clifford_per_t_ratio > 0:
        max_red = 1.0 - mean_overhead / (mean_tau * p.clifford_per_t_ratio)
    else:
        max_red = 0.0
    return QualificationReport(
        synthesis_fraction=fraction,
        criterion_synthesis_majority=fraction > 0.5,
        clifford_depth_reduction=p.clifford_depth_reduction,
        max_beneficial_reduction=max_red,
        criterion_clifford_bound=p.clifford_depth_reduction < max_red,
        total_t=total_t,
        overhead_timesteps=overhead,
    )
