"""Gate values, their local matrices, and the one-gate-per-line circuit text format.

Qubit order inside a gate follows the state-vector convention: the local
basis index of a gate acting on ``qubits = (q0, q1, ...)`` is
``bit(q0) + 2*bit(q1) + 4*bit(q2) + ...``.  So a TOFFOLI(a, b, t) matrix
swaps local indices 3 and 7, and a CNOT(c, t) matrix swaps 1 and 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, ParseError

U1 = "U1"
U2 = "U2"
NOT = "NOT"
CNOT = "CNOT"
TOFFOLI = "TOFFOLI"
SWAP = "SWAP"
PHASE_FLIP = "PHASE_FLIP"
PERMUTATION = "PERMUTATION"

KINDS = (U1, U2, NOT, CNOT, TOFFOLI, SWAP, PHASE_FLIP, PERMUTATION)
CLASSICAL_KINDS = frozenset({NOT, CNOT, TOFFOLI, SWAP, PERMUTATION})
_ARITY = {U1: 1, U2: 2, NOT: 1, CNOT: 2, TOFFOLI: 3, SWAP: 2}

Circuit = list  # ordered list of Gate


@dataclass(frozen=True, eq=False)
class Gate:
    """One unitary primitive acting on a fixed tuple of qubits.

    ``sign`` is only meaningful for U2 (-1 marks the adjoint phase gate).
    ``value`` and ``complement`` are only meaningful for PHASE_FLIP: the gate
    multiplies local basis state ``value`` by -1, or with ``complement`` set,
    every other basis state.  ``table`` holds a PERMUTATION's images.
    """

    kind: str
    qubits: tuple
    sign: int = 1
    value: int = 0
    complement: bool = False
    table: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ArgumentError(f"unknown gate kind {self.kind!r}")
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if any(q < 0 for q in qubits):
            raise ArgumentError(f"negative qubit index in {qubits}")
        # no-cloning discipline: one gate never names a qubit twice
        if len(set(qubits)) != len(qubits):
            raise ArgumentError(f"{self.kind} names a qubit twice: {qubits}")
        if self.kind in _ARITY and len(qubits) != _ARITY[self.kind]:
            raise ArgumentError(f"{self.kind} takes {_ARITY[self.kind]} qubits, got {len(qubits)}")
        if not qubits:
            raise ArgumentError(f"{self.kind} needs at least one qubit")

    @property
    def span(self) -> int:
        return len(self.qubits)

    @property
    def phase(self) -> complex:
        """The |11> phase of a U2 gate, from the exact dyadic exponent."""
        if self.kind != U2:
            raise ArgumentError("phase is defined for U2 gates only")
        k, j = self.qubits
        return complex(np.exp(1j * self.sign * math.ldexp(math.pi, k - j)))

    def dagger(self) -> Gate:
        """Conjugate transpose as a gate of the same kind."""
        if self.kind == U2:
            return Gate(U2, self.qubits, sign=-self.sign)
        if self.kind == PERMUTATION:
            inv = np.empty_like(self.table)
            inv[self.table] = np.arange(self.table.size, dtype=self.table.dtype)
            inv.setflags(write=False)
            return Gate(PERMUTATION, self.qubits, table=inv)
        return self

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        if (self.kind, self.qubits, self.sign, self.value, self.complement) != (
            other.kind, other.qubits, other.sign, other.value, other.complement
        ):
            return False
        if self.table is None or other.table is None:
            return self.table is other.table
        return bool(np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.kind, self.qubits, self.sign, self.value, self.complement))

    def __str__(self):
        return format_gate(self)


def u1(target: int) -> Gate:
    """Hadamard-type gate: |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2."""
    return Gate(U1, (target,))


def u2(k: int, j: int) -> Gate:
    """Phase exp(i*pi/2**(j-k)) on |11> of the pair (k, j); requires k < j."""
    if k >= j:
        raise ArgumentError(f"U2 requires k < j, got k={k}, j={j}")
    return Gate(U2, (k, j))


def not_gate(target: int) -> Gate:
    return Gate(NOT, (target,))


def cnot(control: int, target: int) -> Gate:
    return Gate(CNOT, (control, target))


def toffoli(c1: int, c2: int, target: int) -> Gate:
    return Gate(TOFFOLI, (c1, c2, target))


def swap(a: int, b: int) -> Gate:
    return Gate(SWAP, (a, b))


def phase_flip_at(x0: int, n: int | None = None, *, qubits: Sequence[int] | None = None,
                  complement: bool = False) -> Gate:
    """Diagonal reflection: -1 on basis state ``x0`` of the given qubits, +1 elsewhere.

    With ``complement=True`` the signs are swapped, giving ``-I_delta`` style
    reflections that fix ``x0`` and negate its orthogonal complement.
    """
    if qubits is None:
        if n is None:
            raise ArgumentError("phase_flip_at needs n or qubits")
        qubits = range(n)
    qubits = tuple(qubits)
    if not 0 <= x0 < 1 << len(qubits):
        raise ArgumentError(f"flip index {x0} outside [0, 2**{len(qubits)})")
    return Gate(PHASE_FLIP, qubits, value=int(x0), complement=complement)


def permutation_gate(perm, qubits: Sequence[int] | int) -> Gate:
    """Lift a bijection of ``[0, 2**s)`` to the unitary ``|l> -> |perm[l]>``.

    ``qubits`` is either the span size ``s`` (acting on qubits ``0..s-1``) or
    an explicit sequence of ``s`` qubits.
    """
    if isinstance(qubits, (int, np.integer)):
        qubits = range(int(qubits))
    qubits = tuple(qubits)
    table = np.array(perm, dtype=np.int64).ravel()
    size = 1 << len(qubits)
    if table.size != size:
        raise ArgumentError(f"permutation table has {table.size} entries, expected {size}")
    if table.min(initial=0) < 0 or table.max(initial=0) >= size:
        raise ArgumentError("permutation table has entries out of range")
    if np.bincount(table, minlength=size).max(initial=0) != 1:
        raise ArgumentError("permutation table is not a bijection")
    table.setflags(write=False)
    return Gate(PERMUTATION, qubits, table=table)


def gate_matrix(gate: Gate) -> np.ndarray:
    """Dense ``2**s x 2**s`` matrix of ``gate`` in its local little-endian basis."""
    kind = gate.kind
    if kind == U1:
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    if kind == U2:
        return np.diag([1, 1, 1, gate.phase]).astype(complex)
    if kind == PHASE_FLIP:
        diag = np.ones(1 << gate.span, dtype=complex)
        diag[gate.value] = -1
        if gate.complement:
            diag = -diag
        return np.diag(diag)
    table = classical_table(gate)
    mat = np.zeros((table.size, table.size), dtype=complex)
    mat[table, np.arange(table.size)] = 1
    return mat


def classical_table(gate: Gate) -> np.ndarray:
    """Image of each local basis index under a classical (permuting) gate."""
    if gate.kind == PERMUTATION:
        return gate.table
    idx = np.arange(1 << gate.span)
    if gate.kind == NOT:
        return idx ^ 1
    if gate.kind == CNOT:
        return np.where(idx & 1, idx ^ 2, idx)
    if gate.kind == TOFFOLI:
        return np.where((idx & 3) == 3, idx ^ 4, idx)
    if gate.kind == SWAP:
        return ((idx & 1) << 1) | ((idx >> 1) & 1)
    raise ArgumentError(f"{gate.kind} is not a classical permutation gate")


def inverse_circuit(circuit: Iterable[Gate]) -> list:
    """Adjoint circuit: gates reversed and individually conjugated."""
    return [g.dagger() for g in reversed(list(circuit))]


def max_qubit(circuit: Iterable[Gate]) -> int:
    """Largest qubit index touched, or -1 for an empty circuit."""
    return max((max(g.qubits) for g in circuit), default=-1)


_TEXT_CONSTRUCTORS = {
    U1: u1,
    U2: u2,
    NOT: not_gate,
    CNOT: cnot,
    TOFFOLI: toffoli,
    SWAP: swap,
}


def format_gate(gate: Gate) -> str:
    if gate.kind in _TEXT_CONSTRUCTORS and gate.sign == 1:
        return " ".join([gate.kind, *map(str, gate.qubits)])
    if gate.kind == U2:
        return f"U2DG {gate.qubits[0]} {gate.qubits[1]}"
    raise ArgumentError(f"{gate.kind} gates have no text form")


def format_circuit(circuit: Iterable[Gate]) -> str:
    return "".join(format_gate(g) + "\n" for g in circuit)


def parse_circuit(text: str) -> list:
    """Parse one gate per line; ``#`` starts a comment, blank lines are skipped."""
    circuit = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *args = line.split()
        name = name.upper()
        try:
            qubits = [int(a) for a in args]
        except ValueError:
            raise ParseError(f"non-integer qubit index in {raw.strip()!r}", lineno) from None
        dagger = name == "U2DG"
        if dagger:
            name = U2
        if name not in _TEXT_CONSTRUCTORS:
            raise ParseError(f"unknown gate {name!r}", lineno)
        if len(qubits) != _ARITY[name]:
            raise ParseError(f"{name} takes {_ARITY[name]} qubit(s), got {len(qubits)}", lineno)
        try:
            gate = _TEXT_CONSTRUCTORS[name](*qubits)
        except ArgumentError as exc:
            raise ParseError(str(exc), lineno) from None
        circuit.append(gate.dagger() if dagger else gate)
    return circuit
