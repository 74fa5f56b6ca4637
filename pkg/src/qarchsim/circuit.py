"""Rotation ops, layered logical circuits, greedy layering, and circuit file IO."""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field

from .pauli import PauliString

log = logging.getLogger(__name__)


class RotationKind(enum.Enum):
    ARBITRARY = "ARBITRARY"
    CLIFFORD = "CLIFFORD"
    T = "T"


@dataclass(frozen=True)
class RotationOp:
    """A Pauli-product rotation exp(-i * angle/2 * P).

    ``precision`` is the Clifford+T synthesis tolerance for ARBITRARY angles;
    CLIFFORD and T kinds have fixed synthesis cost and ignore it.
    """

    pauli: PauliString
    angle: float
    precision: float = 1e-10
    kind: RotationKind = RotationKind.ARBITRARY

    def __post_init__(self) -> None:
        if self.pauli.is_identity:
            raise ValueError("rotation Pauli must not be the identity")
        if self.kind is RotationKind.ARBITRARY and not 0.0 < self.precision < 1.0:
            raise ValueError("precision must lie in (0, 1) for ARBITRARY rotations")


class CircuitFormatError(ValueError):
    """Raised when a circuit file fails to parse or validate."""


@dataclass
class LogicalCircuit:
    """Layered sequence of pairwise-commuting rotation groups."""

    num_qubits: int
    layers: list[list[RotationOp]] = field(default_factory=list)
    terminal_measurements: list[PauliString] = field(default_factory=list)

    def validate(self) -> None:
        if self.num_qubits <= 0:
            raise ValueError("num_qubits must be positive")
        for li, layer in enumerate(self.layers):
            for op in layer:
                if op.pauli.n != self.num_qubits:
                    raise ValueError(f"layer {li}: rotation length {op.pauli.n} != {self.num_qubits}")
            for i in range(len(layer)):
                for j in range(i + 1, len(layer)):
                    if not layer[i].pauli.commutes_with(layer[j].pauli):
                        raise ValueError(f"layer {li}: rotations {i} and {j} do not commute")
        for m in self.terminal_measurements:
            if m.n != self.num_qubits:
                raise ValueError("terminal measurement length mismatch")

    def all_rotations(self) -> list[RotationOp]:
        return [op for layer in self.layers for op in layer]

    @property
    def num_rotations(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def arbitrary_rotation_count(self) -> int:
        return sum(1 for op in self.all_rotations() if op.kind is RotationKind.ARBITRARY)


class _LayerIndex:
    """One under-construction layer with a per-qubit member index for fast
    anticommutation probing."""

    __slots__ = ("ops", "xs", "zs", "by_qubit")

    def __init__(self) -> None:
        self.ops: list[RotationOp] = []
        self.xs: list[int] = []
        self.zs: list[int] = []
        self.by_qubit: dict[int, list[int]] = {}

    def add(self, op: RotationOp) -> None:
        idx = len(self.ops)
        self.ops.append(op)
        self.xs.append(op.pauli.x)
        self.zs.append(op.pauli.z)
        for q in op.pauli.support():
            self.by_qubit.setdefault(q, []).append(idx)

    def anticommutes_any(self, x: int, z: int, support: tuple[int, ...]) -> bool:
        # Only members sharing support can anticommute; probe those.
        xs, zs = self.xs, self.zs
        seen: set[int] = set()
        for q in support:
            for idx in self.by_qubit.get(q, ()):
                if idx in seen:
                    continue
                seen.add(idx)
                if ((x & zs[idx]).bit_count() + (z & xs[idx]).bit_count()) % 2:
                    return True
        return False


def greedy_layering(rotations: list[RotationOp]) -> list[list[RotationOp]]:
    """First-fit ASAP layering: each rotation joins the earliest layer after
    every layer containing a non-commuting predecessor. Relative order of
    non-commuting rotations is preserved; each output layer pairwise commutes.
    """
    if not rotations:
        return []
    n = rotations[0].pauli.n
    for op in rotations:
        if op.pauli.n != n:
            raise ValueError("all rotations must act on the same register")
    layers: list[_LayerIndex] = []
    for op in rotations:
        x, z, sup = op.pauli.x, op.pauli.z, op.pauli.support()
        place = 0
        for li in range(len(layers) - 1, -1, -1):
            if layers[li].anticommutes_any(x, z, sup):
                place = li + 1
                break
        if place == len(layers):
            layers.append(_LayerIndex())
        layers[place].add(op)
    return [layer.ops for layer in layers]


def circuit_to_json(circuit: LogicalCircuit) -> str:
    doc = {
        "num_qubits": circuit.num_qubits,
        "layers": [
            [
                {
                    "pauli": op.pauli.to_string(),
                    "angle": op.angle,
                    "precision": op.precision,
                    "kind": op.kind.value,
                }
                for op in layer
            ]
            for layer in circuit.layers
        ],
        "measurements": [m.to_string() for m in circuit.terminal_measurements],
    }
    return json.dumps(doc, separators=(",", ":"))


def circuit_from_json(text: str) -> LogicalCircuit:
    """Parse and validate a circuit file. Empty layers are dropped with a
    warning; a layer containing an anticommuting pair is rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CircuitFormatError("top level must be an object")
    for key in ("num_qubits", "layers", "measurements"):
        if key not in doc:
            raise CircuitFormatError(f"missing field {key!r}")
    for key in doc:
        if key not in ("num_qubits", "layers", "measurements"):
            raise CircuitFormatError(f"unknown field {key!r}")
    n = doc["num_qubits"]
    if not isinstance(n, int) or n <= 0:
        raise CircuitFormatError("num_qubits must be a positive integer")
    layers: list[list[RotationOp]] = []
    for li, raw_layer in enumerate(doc["layers"]):
        if not isinstance(raw_layer, list):
            raise CircuitFormatError(f"layers[{li}] must be an array")
        if not raw_layer:
            log.warning("layers[%d] is empty; dropping it", li)
            continue
        layer: list[RotationOp] = []
        for oi, raw in enumerate(raw_layer):
            where = f"layers[{li}][{oi}]"
            if not isinstance(raw, dict):
                raise CircuitFormatError(f"{where} must be an object")
            try:
                pauli = PauliString.from_string(raw["pauli"])
                kind = RotationKind(raw.get("kind", "ARBITRARY"))
                op = RotationOp(pauli, float(raw["angle"]), float(raw.get("precision", 1e-10)), kind)
            except KeyError as exc:
                raise CircuitFormatError(f"{where}: missing field {exc}") from None
            except ValueError as exc:
                raise CircuitFormatError(f"{where}: {exc}") from None
            if op.pauli.n != n:
                raise CircuitFormatError(f"{where}: pauli length {op.pauli.n} != num_qubits {n}")
            layer.append(op)
        for i in range(len(layer)):
            for j in range(i + 1, len(layer)):
                if not layer[i].pauli.commutes_with(layer[j].pauli):
                    raise CircuitFormatError(
                        f"layers[{li}]: rotations {i} and {j} anticommute within one layer"
                    )
        layers.append(layer)
    measurements = []
    for mi, raw in enumerate(doc["measurements"]):
        try:
            m = PauliString.from_string(raw)
        except ValueError as exc:
            raise CircuitFormatError(f"measurements[{mi}]: {exc}") from None
        if m.n != n:
            raise CircuitFormatError(f"measurements[{mi}]: length mismatch")
        measurements.append(m)
    return LogicalCircuit(n, layers, measurements)


def save_circuit(circuit: LogicalCircuit, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(circuit_to_json(circuit))


def load_circuit(path: str) -> LogicalCircuit:
    with open(path, "r", encoding="utf-8") as fh:
        return circuit_from_json(fh.read())
