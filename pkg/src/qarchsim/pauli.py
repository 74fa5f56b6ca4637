"""Dense symplectic Pauli strings and the commutation test."""

from __future__ import annotations

from dataclasses import dataclass

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliString:
    """Multi-qubit Pauli operator stored as two bit-vectors packed into ints.

    Bit q of ``x`` / ``z`` is the X / Z component on qubit q, so letters are
    I=(0,0), X=(1,0), Y=(1,1), Z=(0,1). Phases are not tracked; downstream
    cost and error models only consume commutation structure and supports.
    """

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError("PauliString length must be positive")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit-vector exceeds declared length")

    @classmethod
    def from_string(cls, s: str) -> "PauliString":
        x = z = 0
        for i, ch in enumerate(s):
            try:
                xb, zb = _LETTER_TO_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r} at position {i}") from None
            x |= xb << i
            z |= zb << i
        return cls(len(s), x, z)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """Weight-1 Pauli with ``letter`` on ``qubit``."""
        if not 0 <= qubit < n:
            raise ValueError("qubit index out of range")
        xb, zb = _LETTER_TO_BITS[letter]
        return cls(n, xb << qubit, zb << qubit)

    @classmethod
    def from_support(cls, n: int, letters: dict[int, str]) -> "PauliString":
        """Pauli with the given non-identity letters at the given qubits."""
        x = z = 0
        for q, letter in letters.items():
            if not 0 <= q < n:
                raise ValueError(f"qubit {q} out of range for n={n}")
            xb, zb = _LETTER_TO_BITS[letter]
            x |= xb << q
            z |= zb << q
        return cls(n, x, z)

    def letter(self, qubit: int) -> str:
        return _BITS_TO_LETTER[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def to_string(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def support(self) -> tuple[int, ...]:
        """Qubit indices carrying a non-identity letter, ascending."""
        bits = self.x | self.z
        out = []
        q = 0
        while bits:
            if bits & 1:
                out.append(q)
            bits >>= 1
            q += 1
        return tuple(out)

    def support_mask(self) -> int:
        return self.x | self.z

    def commutes_with(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise ValueError("length mismatch")
        # Symplectic inner product: parity of anticommuting positions.
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0

    def __str__(self) -> str:
        return self.to_string()


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the number of positions where both letters are non-identity
    and differ is even."""
    return p.commutes_with(q)
