import itertools

import numpy as np
import pytest

from qsim import gates as g
from qsim.boolean import AND, CONST1, BoolGate, BooleanCircuit, eval_circuit
from qsim.errors import ArgumentError, CapacityError
from qsim.reversible import (
    ReversibleCircuit,
    check_contract,
    compile_circuit,
    format_reversible,
    gate_count_bound,
    invert,
    lift_to_unitary,
    parse_reversible,
    simulate,
    simulate_index,
    simulate_table,
)
from qsim.statevector import basis_state

from oracles import contract_by_simulation, random_boolean_circuit, small_circuit_corpus

AND_BC = BooleanCircuit(2, [BoolGate(AND, (0, 1))], [2])


def test_and_gate_contract():
    rc = compile_circuit(AND_BC)
    assert (rc.n_inputs, rc.n_outputs) == (2, 1)
    for x1, x2, y in itertools.product((0, 1), repeat=3):
        out = simulate(rc, (x1, x2, y) + (0,) * rc.n_scratch)
        assert out == (x1, x2, y ^ (x1 & x2)) + (0,) * rc.n_scratch


def test_identity_wire():
    bc = BooleanCircuit(1, [], [0])
    rc = compile_circuit(bc)
    assert rc.n_scratch == 0
    for x, y in itertools.product((0, 1), repeat=2):
        assert simulate(rc, (x, y)) == (x, x ^ y)


def test_const1_with_empty_input():
    bc = BooleanCircuit(0, [BoolGate(CONST1)], [0])
    rc = compile_circuit(bc)
    assert rc.n_inputs == 0
    for y in (0, 1):
        assert simulate(rc, (y,) + (0,) * rc.n_scratch) == (y ^ 1,) + (0,) * rc.n_scratch


def test_simulate_basics():
    empty = ReversibleCircuit.on_wires(3, [])
    assert simulate(empty, (1, 0, 1)) == (1, 0, 1)
    tof = ReversibleCircuit.on_wires(3, [g.toffoli(0, 1, 2)])
    assert simulate(tof, (1, 1, 0)) == (1, 1, 1)
    with pytest.raises(ArgumentError):
        simulate(tof, (1, 1))


def test_rejects_non_reversible_gates_and_bad_wires():
    with pytest.raises(ArgumentError):
        ReversibleCircuit.on_wires(2, [g.u1(0)])
    with pytest.raises(ArgumentError):
        ReversibleCircuit.on_wires(2, [g.cnot(0, 2)])


def random_reversible(rng, wires, n_gates):
    gates = []
    for _ in range(n_gates):
        kind = rng.integers(4)
        qs = [int(q) for q in rng.choice(wires, size=3, replace=False)]
        gates.append([g.not_gate(qs[0]), g.cnot(qs[0], qs[1]),
                      g.toffoli(*qs), g.swap(qs[0], qs[1])][kind])
    return ReversibleCircuit.on_wires(wires, gates)


def test_invert():
    rng = np.random.default_rng(1)
    rc = random_reversible(rng, 6, 10)
    assert invert(invert(rc)) == rc
    single = ReversibleCircuit.on_wires(3, [g.toffoli(0, 1, 2)])
    assert invert(single) == single
    fwd, back = simulate_table(rc), simulate_table(invert(rc))
    np.testing.assert_array_equal(back[fwd], np.arange(64))


def test_lift_matches_simulation():
    rc = compile_circuit(AND_BC)
    gate = lift_to_unitary(rc)
    assert gate.kind == g.PERMUTATION
    for b in range(1 << rc.n_wires):
        assert gate.table[b] == simulate_index(rc, b)
        state = basis_state(rc.n_wires, b).apply(gate)
        assert state.amplitudes[simulate_index(rc, b)] == 1
    # compiled AND = TOFFOLI into scratch, CNOT out, TOFFOLI back
    direct = np.arange(16)
    for gt in rc.gates:
        direct = _embed(gt, 4)[direct]
    np.testing.assert_array_equal(gate.table, direct)


def _embed(gate, n):
    table = np.arange(1 << n)
    local = g.classical_table(gate)
    out = table.copy()
    for idx in range(1 << n):
        l = sum(((idx >> q) & 1) << i for i, q in enumerate(gate.qubits))
        new = idx
        for i, q in enumerate(gate.qubits):
            new = (new & ~(1 << q)) | (((local[l] >> i) & 1) << q)
        out[idx] = new
    return out


def test_identity_circuit_lifts_to_identity():
    gate = lift_to_unitary(ReversibleCircuit.on_wires(3, []))
    np.testing.assert_array_equal(gate.table, np.arange(8))


def test_compiled_circuits_are_bijections():
    rng = np.random.default_rng(2)
    checked = 0
    for _ in range(200):
        bc = random_boolean_circuit(rng, int(rng.integers(0, 4)), int(rng.integers(1, 4)),
                                    int(rng.integers(0, 8)))
        rc = compile_circuit(bc)
        if rc.n_wires <= 14:
            table = simulate_table(rc)
            assert np.unique(table).size == table.size
            checked += 1
    assert checked > 100


def test_contract_exhaustive_small_corpus():
    count = 0
    for bc in small_circuit_corpus(max_gates=2):
        rc = compile_circuit(bc)
        assert check_contract(rc, bc) == []
        assert len(rc) <= gate_count_bound(bc)
        count += 1
    assert count > 1000


@pytest.mark.parametrize("seed", range(5))
def test_contract_random_matches_bitwise_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    for _ in range(40):
        bc = random_boolean_circuit(rng, int(rng.integers(0, 5)), int(rng.integers(1, 5)),
                                    int(rng.integers(0, 13)))
        rc = compile_circuit(bc)
        assert check_contract(rc, bc) == []
        assert contract_by_simulation(bc, rc)
        assert len(rc) <= 4 * bc.output_size + bc.n_outputs


def test_check_contract_detects_a_broken_circuit():
    rc = compile_circuit(AND_BC)
    broken = ReversibleCircuit(rc.n_inputs, rc.n_outputs, rc.n_scratch, rc.gates[:-1])
    assert check_contract(broken, AND_BC)


def test_capacity_cap():
    bc = BooleanCircuit(2, [BoolGate(AND, (0, 1))] * 10, [2])
    with pytest.raises(CapacityError):
        compile_circuit(bc, max_wires=8)
    with pytest.raises(CapacityError):
        simulate_table(ReversibleCircuit.on_wires(30, []))


def test_text_round_trip():
    rc = compile_circuit(BooleanCircuit(2, [BoolGate("XOR", (0, 1)), BoolGate("FANOUT", (2,))], [3, 4]))
    assert parse_reversible(format_reversible(rc)) == rc
    plain = parse_reversible("CNOT 0 3\n")
    assert plain.n_wires == 4
