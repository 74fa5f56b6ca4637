"""Trotter-Suzuki product formulas over commuting term groups."""

from __future__ import annotations

from .circuit import LogicalCircuit, RotationKind, RotationOp, greedy_layering
from .hamiltonians import HamiltonianTerm, group_commuting


def suzuki_group_schedule(num_groups: int, order: int) -> list[tuple[int, float]]:
    """Sequence of (group index, time fraction) exponentials for one step.

    Order 2 is the symmetric split: groups 0..G-2 at half weight, the last
    group at full weight, then groups G-2..0 at half weight (2G-1 entries).
    Higher even orders follow the recursion
    S_2k(dt) = S_{2k-2}(p dt)^2 S_{2k-2}((1-4p) dt) S_{2k-2}(p dt)^2 with
    p = 1/(4 - 4^(1/(2k-1))). Adjacent exponentials are never merged.
    """
    if num_groups < 1:
        raise ValueError("need at least one group")
    if order < 2 or order % 2:
        raise ValueError(f"unsupported Trotter order {order}")

    def s2(scale: float) -> list[tuple[int, float]]:
        if num_groups == 1:
            return [(0, scale)]
        first = [(g, 0.5 * scale) for g in range(num_groups - 1)]
        return first + [(num_groups - 1, scale)] + first[::-1]

    def recurse(k: int, scale: float) -> list[tuple[int, float]]:
        if k == 1:
            return s2(scale)
        p = 1.0 / (4.0 - 4.0 ** (1.0 / (2 * k - 1)))
        wing = recurse(k - 1, p * scale)
        middle = recurse(k - 1, (1.0 - 4.0 * p) * scale)
        return wing + wing + middle + wing + wing

    return recurse(order // 2, 1.0)


def trotterize(terms: list[HamiltonianTerm], order: int, steps: int, time: float,
               precision: float) -> LogicalCircuit:
    """Compile exp(-iHt) into a layered rotation circuit.

    Terms are partitioned into commuting groups first-fit; every exponential
    of every term in the Suzuki schedule emits one ARBITRARY rotation with the
    given synthesis precision; the flat stream is then greedily layered.
    """
    if not terms:
        raise ValueError("empty Hamiltonian")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    n = terms[0].pauli.n
    groups = group_commuting(terms)
    schedule = suzuki_group_schedule(len(groups), order)
    dt = time / steps
    rotations: list[RotationOp] = []
    for _ in range(steps):
        for gi, frac in schedule:
            for term in groups[gi]:
                rotations.append(RotationOp(
                    term.pauli, term.coefficient * frac * dt, precision, RotationKind.ARBITRARY))
    return LogicalCircuit(n, greedy_layering(rotations))


def rotations_per_step(terms: list[HamiltonianTerm], order: int) -> int:
    """Rotation count one Trotter step expands to (no merging)."""
    groups = group_commuting(terms)
    sizes = [len(g) for g in groups]
    return sum(sizes[gi] for gi, _ in suzuki_group_schedule(len(groups), order))
