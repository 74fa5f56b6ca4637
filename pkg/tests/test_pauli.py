"""Symplectic Pauli strings checked against dense matrix algebra."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qarchsim.pauli import PauliString, commutes

I2 = np.eye(2, dtype=complex)
MATS = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense(p: PauliString) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(p.n):
        out = np.kron(out, MATS[p.letter(q)])
    return out


pauli_text = st.integers(1, 6).flatmap(
    lambda n: st.text(alphabet="IXYZ", min_size=n, max_size=n))


def test_round_trip_string():
    for s in ("IXYZ", "ZZZZ", "I", "YX"):
        assert PauliString.from_string(s).to_string() == s


def test_from_support():
    p = PauliString.from_support(5, {0: "X", 3: "Z"})
    assert p.to_string() == "XIIZI"
    assert p.support() == (0, 3)
    assert p.weight == 2


def test_single():
    p = PauliString.single(4, 2, "Y")
    assert p.to_string() == "IIYI"


def test_identity_flags():
    assert PauliString.from_string("III").is_identity
    assert not PauliString.from_string("IXI").is_identity


def test_rejects_bad_letter():
    with pytest.raises(ValueError):
        PauliString.from_string("IXQ")


def test_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        PauliString(n=2, x=4, z=0)


@given(pauli_text, pauli_text)
def test_commutation_matches_dense_matrices(sa, sb):
    n = min(len(sa), len(sb))
    p = PauliString.from_string(sa[:n])
    q = PauliString.from_string(sb[:n])
    a, b = dense(p), dense(q)
    exact = np.allclose(a @ b, b @ a)
    assert p.commutes_with(q) == exact
    assert commutes(p, q) == exact


@given(pauli_text)
def test_self_commutes(s):
    p = PauliString.from_string(s)
    assert p.commutes_with(p)


@given(pauli_text, pauli_text)
def test_commutation_symmetric(sa, sb):
    n = min(len(sa), len(sb))
    p = PauliString.from_string(sa[:n])
    q = PauliString.from_string(sb[:n])
    assert p.commutes_with(q) == q.commutes_with(p)


def test_anticommuting_pair():
    assert not commutes(PauliString.from_string("XI"),
                        PauliString.from_string("ZI"))
    assert commutes(PauliString.from_string("XX"),
                    PauliString.from_string("ZZ"))


@given(pauli_text)
def test_weight_counts_non_identity_sites(s):
    p = PauliString.from_string(s)
    assert p.weight == sum(1 for ch in s if ch != "I")
    assert p.support() == tuple(i for i, ch in enumerate(s) if ch != "I")
