"""Benchmark Hamiltonians on 2D lattices as Pauli term lists."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .pauli import PauliString


@dataclass(frozen=True)
class HamiltonianTerm:
    pauli: PauliString
    coefficient: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.coefficient) or self.coefficient == 0.0:
            raise ValueError("coefficient must be finite and nonzero")


class Model(enum.Enum):
    HEISENBERG_2D = "HEISENBERG_2D"
    TFIM_NN_2D = "TFIM_NN_2D"
    TFIM_LR_2D = "TFIM_LR_2D"
    FERMI_HUBBARD = "FERMI_HUBBARD"


@dataclass(frozen=True)
class BenchmarkSpec:
    """Everything needed to generate one benchmark circuit."""

    model: Model
    rows: int
    cols: int
    trotter_order: int = 4
    trotter_steps: int = 1
    evolution_time: float = 10.0
    precision: float = 1e-10
    jx: float = 1.0
    jy: float = 1.0
    jz: float = 1.0
    j: float = 1.0
    b: float = 1.0
    alpha: float = 2.0
    t_hop: float = 1.0
    u_onsite: float = 1.0

    def __post_init__(self) -> None:
        if self.trotter_order not in (2, 4, 6):
            raise ValueError("trotter_order must be one of {2, 4, 6}")
        if self.trotter_steps < 1:
            raise ValueError("trotter_steps must be >= 1")
        if self.evolution_time <= 0:
            raise ValueError("evolution_time must be positive")
        if self.rows * self.cols < 2:
            raise ValueError("lattice must contain at least 2 sites")

    @property
    def num_qubits(self) -> int:
        sites = self.rows * self.cols
        return 2 * sites if self.model is Model.FERMI_HUBBARD else sites


def _grid_edges(rows: int, cols: int) -> list[tuple[int, int]]:
    """Nearest-neighbor edges of the open-boundary grid, row-major sites."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            site = r * cols + c
            if c + 1 < cols:
                edges.append((site, site + 1))
            if r + 1 < rows:
                edges.append((site, site + cols))
    return edges


def build_heisenberg(rows: int, cols: int, jx: float = 1.0, jy: float = 1.0,
                     jz: float = 1.0) -> list[HamiltonianTerm]:
    """XX, YY, ZZ couplings on every grid edge, emitted letter-major so the
    greedy grouping recovers the three standard commuting families."""
    if rows * cols < 2:
        raise ValueError("lattice must contain at least 2 sites")
    n = rows * cols
    edges = _grid_edges(rows, cols)
    terms = []
    for letter, coeff in (("X", jx), ("Y", jy), ("Z", jz)):
        if coeff == 0.0:
            continue
        for a, b in edges:
            terms.append(HamiltonianTerm(PauliString.from_support(n, {a: letter, b: letter}), coeff))
    return terms


def build_tfim(rows: int, cols: int, j: float = 1.0, b: float = 1.0,
               alpha: float | None = None) -> list[HamiltonianTerm]:
    """Transverse-field Ising couplings: nearest-neighbor ZZ when ``alpha`` is
    None, otherwise all-pairs ZZ with strength j/dist^alpha (Euclidean lattice
    distance); plus an X field per site."""
    if rows * cols < 2:
        raise ValueError("lattice must contain at least 2 sites")
    if alpha is not None and alpha <= 0:
        raise ValueError("alpha must be positive for the long-range model")
    n = rows * cols
    terms = []
    if j != 0.0:
        if alpha is None:
            for a, bb in _grid_edges(rows, cols):
                terms.append(HamiltonianTerm(PauliString.from_support(n, {a: "Z", bb: "Z"}), j))
        else:
            for a in range(n):
                ra, ca = divmod(a, cols)
                for bb in range(a + 1, n):
                    rb, cb = divmod(bb, cols)
                    dist = math.hypot(ra - rb, ca - cb)
                    terms.append(HamiltonianTerm(
                        PauliString.from_support(n, {a: "Z", bb: "Z"}), j / dist ** alpha))
    if b != 0.0:
        for a in range(n):
            terms.append(HamiltonianTerm(PauliString.single(n, a, "X"), b))
    return terms


def _snake_position(r: int, c: int, cols: int) -> int:
    return r * cols + (c if r % 2 == 0 else cols - 1 - c)


def jordan_wigner_hubbard(rows: int, cols: int, t_hop: float = 1.0,
                          u_onsite: float = 1.0) -> list[HamiltonianTerm]:
    """Two-species Hubbard model mapped to qubits.

    Mode ordering is a row-major snake within each spin sector with the two
    sectors concatenated (spin-up modes first), which keeps hopping strings
    short. Each hopping term becomes the pair (X Z..Z X + Y Z..Z Y)/2; each
    on-site term expands into ZZ/Z/Z via the number-operator identity with the
    constant dropped.
    """
    sites = rows * cols
    if sites < 1:
        raise ValueError("lattice must contain at least 1 site")
    n = 2 * sites
    terms = []
    if t_hop != 0.0:
        for sector in (0, 1):
            base = sector * sites
            for (a, b) in _grid_edges(rows, cols):
                pa = base + _snake_position(*divmod(a, cols), cols)
                pb = base + _snake_position(*divmod(b, cols), cols)
                lo, hi = min(pa, pb), max(pa, pb)
                for end in ("X", "Y"):
                    letters = {q: "Z" for q in range(lo + 1, hi)}
                    letters[lo] = end
                    letters[hi] = end
                    terms.append(HamiltonianTerm(PauliString.from_support(n, letters), -t_hop / 2.0))
    if u_onsite != 0.0:
        for a in range(sites):
            up = _snake_position(*divmod(a, cols), cols)
            down = sites + up
            terms.append(HamiltonianTerm(
                PauliString.from_support(n, {up: "Z", down: "Z"}), u_onsite / 4.0))
            terms.append(HamiltonianTerm(PauliString.single(n, up, "Z"), -u_onsite / 4.0))
            terms.append(HamiltonianTerm(PauliString.single(n, down, "Z"), -u_onsite / 4.0))
    return terms


def benchmark_terms(spec: BenchmarkSpec) -> list[HamiltonianTerm]:
    if spec.model is Model.HEISENBERG_2D:
        return build_heisenberg(spec.rows, spec.cols, spec.jx, spec.jy, spec.jz)
    if spec.model is Model.TFIM_NN_2D:
        return build_tfim(spec.rows, spec.cols, spec.j, spec.b, alpha=None)
    if spec.model is Model.TFIM_LR_2D:
        return build_tfim(spec.rows, spec.cols, spec.j, spec.b, alpha=spec.alpha)
    if spec.model is Model.FERMI_HUBBARD:
        return jordan_wigner_hubbard(spec.rows, spec.cols, spec.t_hop, spec.u_onsite)
    raise ValueError(f"unknown model {spec.model}")


@dataclass
class _GroupAccum:
    terms: list[HamiltonianTerm] = field(default_factory=list)
    all_z: bool = True
    all_x: bool = True

    def accepts(self, term: HamiltonianTerm) -> bool:
        p = term.pauli
        # Same-basis fast path: X-free vs X-free (or Z-free vs Z-free) always commutes.
        if self.all_z and p.x == 0:
            return True
        if self.all_x and p.z == 0:
            return True
        return all(p.commutes_with(t.pauli) for t in self.terms)

    def add(self, term: HamiltonianTerm) -> None:
        self.terms.append(term)
        if term.pauli.x:
            self.all_z = False
        if term.pauli.z:
            self.all_x = False


def group_commuting(terms: list[HamiltonianTerm]) -> list[list[HamiltonianTerm]]:
    """First-fit partition into mutually commuting groups, order-preserving."""
    groups: list[_GroupAccum] = []
    for term in terms:
        for g in groups:
            if g.accepts(term):
                g.add(term)
                break
        else:
            groups.append(_GroupAccum())
            groups[-1].add(term)
    return [g.terms for g in groups]
