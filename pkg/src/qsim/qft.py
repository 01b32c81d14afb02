"""Quantum Fourier transform: dense matrix and the O(n^2) U1/U2 circuit.

The register is read with qubit ``n-1`` as the most significant bit of x.
The core circuit applies, for ``k = n-1`` down to ``0``, the phase gates
``U2(k, j)`` for ``j > k`` and then ``U1(k)``.  It maps
``|x> -> sum_c exp(2 pi i c x / N) |rev(c)> / sqrt(N)`` where ``rev`` reverses
the n bits; appending ``n // 2`` SWAPs undoes the reversal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gates as g
from .errors import ArgumentError


@dataclass(frozen=True)
class QftCircuit:
    n: int
    gates: tuple
    bit_reversed: bool

    def __iter__(self):
        return iter(self.gates)

    def __len__(self):
        return len(self.gates)

    def inverse(self) -> QftCircuit:
        return QftCircuit(self.n, tuple(g.inverse_circuit(self.gates)), self.bit_reversed)


def bit_reverse(x: int, n: int) -> int:
    """Reverse the low ``n`` bits of ``x``."""
    if not 0 <= x < 1 << n:
        raise ArgumentError(f"{x} does not fit in {n} bits")
    out = 0
    for _ in range(n):
        out = (out << 1) | (x & 1)
        x >>= 1
    return out


def bit_reverse_permutation(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    out = np.zeros_like(idx)
    for i in range(n):
        out |= ((idx >> i) & 1) << (n - 1 - i)
    return out


def dft_matrix(n: int) -> np.ndarray:
    """``N x N`` matrix with entry ``(c, x) = exp(2 pi i c x / N) / sqrt(N)``, ``N = 2**n``."""
    N = 1 << n
    idx = np.arange(N)
    # reduce c*x mod N in integers so the phase argument stays exact
    phases = np.outer(idx, idx) % N
    return np.exp(2j * np.pi * phases / N) / math.sqrt(N)


def qft_circuit_bitrev(n: int) -> QftCircuit:
    """The n + n(n-1)/2 gate core with bit-reversed output."""
    if n < 1:
        raise ArgumentError("QFT needs at least one qubit")
    gates = []
    for k in reversed(range(n)):
        gates += [g.u2(k, j) for j in range(k + 1, n)]
        gates.append(g.u1(k))
    return QftCircuit(n, tuple(gates), bit_reversed=True)


def qft_circuit(n: int) -> QftCircuit:
    """The core followed by the SWAPs that restore natural output order."""
    core = qft_circuit_bitrev(n)
    swaps = tuple(g.swap(i, n - 1 - i) for i in range(n // 2))
    return QftCircuit(n, core.gates + swaps, bit_reversed=False)


def qft_gate_count(n: int, bit_reversed: bool = False) -> int:
    return n + n * (n - 1) // 2 + (0 if bit_reversed else n // 2)
