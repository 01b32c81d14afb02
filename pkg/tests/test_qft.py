import math

import numpy as np
import pytest

from qsim import gates as g
from qsim.qft import (
    bit_reverse,
    bit_reverse_permutation,
    dft_matrix,
    qft_circuit,
    qft_circuit_bitrev,
    qft_gate_count,
)
from qsim.statevector import apply_circuit, basis_state

from oracles import H, circuit_operator, dft, reverse_bits


def induced_operator(circuit, n):
    """Columns are the circuit applied (with the qsim kernels) to each |x>."""
    cols = [apply_circuit(basis_state(n, x), circuit).amplitudes for x in range(1 << n)]
    return np.stack(cols, axis=1)


def test_dft_n1_is_u1():
    np.testing.assert_allclose(dft_matrix(1), H, atol=1e-15)


@pytest.mark.parametrize("n", range(1, 7))
def test_dft_matches_direct_formula(n):
    np.testing.assert_allclose(dft_matrix(n), dft(n), atol=1e-12)
    np.testing.assert_allclose(dft_matrix(n)[:, 0], 1 / math.sqrt(1 << n), atol=1e-15)


def test_dft_n2_column_1():
    np.testing.assert_allclose(dft_matrix(2)[:, 1], [0.5, 0.5j, -0.5, -0.5j], atol=1e-15)


@pytest.mark.parametrize("n", range(1, 9))
def test_dft_unitary(n):
    m = dft_matrix(n)
    np.testing.assert_allclose(m @ m.conj().T, np.eye(1 << n), atol=1e-10)


def test_bitrev_n1_is_single_u1():
    c = qft_circuit_bitrev(1)
    assert list(c) == [g.u1(0)]


def test_bitrev_n3_on_zero_is_uniform():
    s = apply_circuit(basis_state(3), qft_circuit_bitrev(3))
    np.testing.assert_allclose(s.amplitudes, 1 / math.sqrt(8), atol=1e-15)


@pytest.mark.parametrize("n", range(1, 8))
def test_bitrev_circuit_matches_reversed_dft(n):
    want = dft(n)[[reverse_bits(c, n) for c in range(1 << n)], :]
    np.testing.assert_allclose(induced_operator(qft_circuit_bitrev(n), n), want, atol=1e-10)


def test_n2_circuit_layout():
    assert list(qft_circuit(2)) == [g.u1(1), g.u2(0, 1), g.u1(0), g.swap(0, 1)]
    np.testing.assert_allclose(circuit_operator(qft_circuit(2), 2), dft(2), atol=1e-12)


@pytest.mark.parametrize("n", range(1, 7))
def test_circuit_equals_dft_via_dense_oracle(n):
    np.testing.assert_allclose(circuit_operator(qft_circuit(n), n), dft(n), atol=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_inverse_composes_to_identity(n):
    c = qft_circuit(n)
    op = induced_operator(list(c) + list(c.inverse()), n)
    np.testing.assert_allclose(op, np.eye(1 << n), atol=1e-10)


@pytest.mark.parametrize("n", range(1, 11))
def test_gate_counts(n):
    assert len(qft_circuit_bitrev(n)) == n + n * (n - 1) // 2 == qft_gate_count(n, True)
    assert len(qft_circuit(n)) == qft_gate_count(n)
    assert all(gt.kind in (g.U1, g.U2, g.SWAP) for gt in qft_circuit(n))


def test_n8_gate_count_is_40():
    assert len(qft_circuit(8)) == 40


@pytest.mark.parametrize("n", [3, 5, 6])
def test_every_basis_state_transforms_to_uniform_probabilities(n):
    for x in range(1 << n):
        p = apply_circuit(basis_state(n, x), qft_circuit(n)).probabilities()
        np.testing.assert_allclose(p, 1 / (1 << n), atol=1e-12)


def test_bit_reverse():
    assert bit_reverse(1, 3) == 4
    assert bit_reverse(0, 5) == 0
    assert bit_reverse(0b1101, 4) == 0b1011


@pytest.mark.parametrize("n", range(0, 17))
def test_bit_reverse_is_involution(n):
    perm = bit_reverse_permutation(n)
    np.testing.assert_array_equal(perm[perm], np.arange(1 << n))
    for x in range(0, 1 << n, max(1, (1 << n) // 257)):
        assert bit_reverse(bit_reverse(x, n), n) == x
        assert perm[x] == bit_reverse(x, n) == reverse_bits(x, n)
