"""Compiler and discrete-event simulator for early fault-tolerant neutral-atom architectures.

The package builds Hamiltonian-dynamics benchmark circuits out of Pauli-product
rotations, compiles them to several fault-tolerant backends (module-based
extractor ISA with serial or parallel T injection, transversal surface-code,
and hybrid load/store), and simulates execution under realistic instruction
timings, per-instruction error rates, and nondeterministic T-state production.
"""

__version__ = "0.1.0"

from .pauli import PauliString, commutes
from .circuit import LogicalCircuit, RotationKind, RotationOp, greedy_layering

__all__ = [
    "PauliString",
    "commutes",
    "LogicalCircuit",
    "RotationKind",
    "RotationOp",
    "greedy_layering",
    "__version__",
]
