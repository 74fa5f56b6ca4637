"""Layering invariants and the circuit file format."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from qarchsim.circuit import (CircuitFormatError, LogicalCircuit, RotationKind,
                              RotationOp, circuit_from_json, circuit_to_json,
                              greedy_layering, load_circuit, save_circuit)
from qarchsim.pauli import PauliString


def rot(s: str, angle: float = 0.1) -> RotationOp:
    return RotationOp(PauliString.from_string(s), angle)


paulis = st.integers(2, 5).flatmap(
    lambda n: st.lists(
        st.text(alphabet="IXYZ", min_size=n, max_size=n).filter(
            lambda t: set(t) != {"I"}),
        min_size=1, max_size=30))


def test_greedy_layering_groups_commuting_ops():
    ops = [rot("ZZI"), rot("IZZ"), rot("XII")]
    layers = greedy_layering(ops)
    assert len(layers) == 2
    assert [op.pauli.to_string() for op in layers[0]] == ["ZZI", "IZZ"]
    assert [op.pauli.to_string() for op in layers[1]] == ["XII"]


def test_greedy_layering_respects_blocking():
    # The middle X anticommutes with both Z rotations, so the trailing Z
    # cannot float back into the first layer past it.
    ops = [rot("ZI"), rot("XI"), rot("ZI")]
    layers = greedy_layering(ops)
    assert [len(l) for l in layers] == [1, 1, 1]


@settings(max_examples=60, deadline=None)
@given(paulis)
def test_layers_pairwise_commute(strings):
    ops = [rot(s) for s in strings]
    layers = greedy_layering(ops)
    for layer in layers:
        for i in range(len(layer)):
            for j in range(i + 1, len(layer)):
                assert layer[i].pauli.commutes_with(layer[j].pauli)


@settings(max_examples=60, deadline=None)
@given(paulis)
def test_layering_preserves_anticommuting_order(strings):
    ops = [rot(s) for s in strings]
    layers = greedy_layering(ops)
    flat = [op for layer in layers for op in layer]
    assert sorted(map(id, flat)) == sorted(map(id, ops))
    # Any anticommuting pair must appear in the same relative order as the
    # input stream; commuting pairs may legally reorder.
    pos_in = {id(op): k for k, op in enumerate(ops)}
    pos_out = {id(op): k for k, op in enumerate(flat)}
    for a in ops:
        for b in ops:
            if pos_in[id(a)] < pos_in[id(b)] and not a.pauli.commutes_with(b.pauli):
                assert pos_out[id(a)] < pos_out[id(b)]


def test_rotation_rejects_identity_pauli():
    with pytest.raises(ValueError):
        RotationOp(PauliString.from_string("II"), 0.3)


def test_rotation_rejects_bad_precision():
    with pytest.raises(ValueError):
        RotationOp(PauliString.from_string("XI"), 0.3, precision=2.0)


def test_validate_rejects_anticommuting_layer():
    circ = LogicalCircuit(2, [[rot("XI"), rot("ZI")]])
    with pytest.raises(ValueError):
        circ.validate()


def test_counts():
    circ = LogicalCircuit(3, greedy_layering([rot("ZZI"), rot("IZZ"), rot("XII")]))
    assert circ.num_rotations == 3
    assert circ.arbitrary_rotation_count() == 3
    assert len(circ.all_rotations()) == 3


def test_json_round_trip(tmp_path):
    ops = [rot("ZZI", 0.25), rot("IXX", -0.5),
           RotationOp(PauliString.from_string("IIZ"), 0.0, kind=RotationKind.CLIFFORD)]
    circ = LogicalCircuit(3, greedy_layering(ops),
                          terminal_measurements=[PauliString.from_string("ZZZ")])
    back = circuit_from_json(circuit_to_json(circ))
    assert back.num_qubits == 3
    assert back.num_rotations == 3
    assert [op.pauli.to_string() for op in back.all_rotations()] == \
           [op.pauli.to_string() for op in circ.all_rotations()]
    assert [op.kind for op in back.all_rotations()] == \
           [op.kind for op in circ.all_rotations()]
    assert back.terminal_measurements[0].to_string() == "ZZZ"

    path = tmp_path / "circ.json"
    save_circuit(circ, str(path))
    assert load_circuit(str(path)).num_rotations == 3


def test_from_json_rejects_garbage():
    with pytest.raises(CircuitFormatError):
        circuit_from_json("{not json")


def test_from_json_rejects_missing_and_unknown_fields():
    with pytest.raises(CircuitFormatError):
        circuit_from_json(json.dumps({"num_qubits": 2, "layers": []}))
    doc = {"num_qubits": 2, "layers": [], "measurements": [], "extra": 1}
    with pytest.raises(CircuitFormatError):
        circuit_from_json(json.dumps(doc))


def test_from_json_rejects_anticommuting_layer():
    doc = {"num_qubits": 2,
           "layers": [[{"pauli": "XI", "angle": 0.1, "precision": 1e-10,
                        "kind": "ARBITRARY"},
                       {"pauli": "ZI", "angle": 0.1, "precision": 1e-10,
                        "kind": "ARBITRARY"}]],
           "measurements": []}
    with pytest.raises(CircuitFormatError):
        circuit_from_json(json.dumps(doc))


def test_from_json_rejects_bad_kind_and_length():
    doc = {"num_qubits": 2,
           "layers": [[{"pauli": "XI", "angle": 0.1, "precision": 1e-10,
                        "kind": "MAGIC"}]],
           "measurements": []}
    with pytest.raises(CircuitFormatError):
        circuit_from_json(json.dumps(doc))
    doc2 = {"num_qubits": 3,
            "layers": [[{"pauli": "XI", "angle": 0.1, "precision": 1e-10,
                         "kind": "ARBITRARY"}]],
            "measurements": []}
    with pytest.raises(CircuitFormatError):
        circuit_from_json(json.dumps(doc2))
