"""Compile Boolean circuits into reversible NOT/CNOT/TOFFOLI circuits.

Register layout of a compiled circuit on ``m + n + L`` wires (wire i is bit i
of the basis index):

    wires 0 .. m-1            input x
    wires m .. m+n-1          output y
    wires m+n .. m+n+L-1      scratch, zero on entry and on exit

The compiled permutation H satisfies ``H(x, y, 0) = (x, F(x) xor y, 0)``: a
forward pass computes every gate into fresh scratch wires, n CNOTs add the
result into y, and the mirrored forward pass clears the scratch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gates as g
from .boolean import AND, CONST1, FANOUT, ID, XOR, BooleanCircuit, circuit_function
from .errors import ArgumentError, CapacityError, ParseError
from .statevector import DEFAULT_MAX_QUBITS

DEFAULT_MAX_WIRES = 4096
# compiled length <= GATE_COUNT_CONSTANT * (L + m + n)**2 (in fact <= 4L + n)
GATE_COUNT_CONSTANT = 4
REVERSIBLE_KINDS = frozenset({g.NOT, g.CNOT, g.TOFFOLI, g.SWAP})


@dataclass(frozen=True)
class ReversibleCircuit:
    n_inputs: int
    n_outputs: int
    n_scratch: int
    gates: tuple

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if min(self.n_inputs, self.n_outputs, self.n_scratch) < 0:
            raise ArgumentError("register sizes must be non-negative")
        for gate in self.gates:
            if gate.kind not in REVERSIBLE_KINDS:
                raise ArgumentError(f"{gate.kind} is not a reversible classical gate")
            if max(gate.qubits) >= self.n_wires:
                raise ArgumentError(f"{gate.kind}{gate.qubits} exceeds {self.n_wires} wires")

    @classmethod
    def on_wires(cls, n_wires: int, gates) -> ReversibleCircuit:
        """A circuit with no register split (all wires count as input)."""
        return cls(n_wires, 0, 0, gates)

    @property
    def n_wires(self) -> int:
        return self.n_inputs + self.n_outputs + self.n_scratch

    def __len__(self):
        return len(self.gates)


def compile_circuit(bc: BooleanCircuit, *, max_wires: int = DEFAULT_MAX_WIRES) -> ReversibleCircuit:
    """Translate ``bc`` gate by gate, copy out, and uncompute.

    ID and the first FANOUT output alias existing wires and emit nothing;
    CONST1, XOR, AND and the second FANOUT output each write into one fresh
    scratch wire, so the scratch size is at most ``bc.output_size``.
    """
    m, n = bc.n_inputs, bc.n_outputs
    if m + n + bc.output_size > max_wires:
        raise CapacityError(f"compilation needs up to {m + n + bc.output_size} wires, "
                            f"cap is {max_wires}")
    wire = list(range(m))
    fresh = m + n
    forward = []
    for gate in bc.gates:
        args = [wire[w] for w in gate.inputs]
        if gate.kind == ID:
            wire.append(args[0])
            continue
        target = fresh
        fresh += 1
        if gate.kind == CONST1:
            forward.append(g.not_gate(target))
        elif gate.kind == XOR:
            forward += [g.cnot(args[0], target), g.cnot(args[1], target)]
        elif gate.kind == AND:
            if args[0] == args[1]:
                forward.append(g.cnot(args[0], target))
            else:
                forward.append(g.toffoli(args[0], args[1], target))
        if gate.kind == FANOUT:
            forward.append(g.cnot(args[0], target))
            wire += [args[0], target]
        else:
            wire.append(target)
    copy_out = [g.cnot(wire[w], m + i) for i, w in enumerate(bc.outputs)]
    uncompute = [gate.dagger() for gate in reversed(forward)]
    return ReversibleCircuit(m, n, fresh - m - n, forward + copy_out + uncompute)


def _run(gates, x):
    """Push a basis index (int) or an int64 array of indices through the gates."""
    for gate in gates:
        q = gate.qubits
        if gate.kind == g.NOT:
            x = x ^ (1 << q[0])
        elif gate.kind == g.CNOT:
            x = x ^ (((x >> q[0]) & 1) << q[1])
        elif gate.kind == g.TOFFOLI:
            x = x ^ (((x >> q[0]) & (x >> q[1]) & 1) << q[2])
        else:
            diff = ((x >> q[0]) ^ (x >> q[1])) & 1
            x = x ^ ((diff << q[0]) | (diff << q[1]))
    return x


def simulate_index(rc: ReversibleCircuit, x: int) -> int:
    if not 0 <= x < 1 << rc.n_wires:
        raise ArgumentError(f"input {x} outside [0, 2**{rc.n_wires})")
    return int(_run(rc.gates, int(x)))


def simulate(rc: ReversibleCircuit, bits) -> tuple:
    """Apply each gate's bit table in order to a bit vector (wire i = bits[i])."""
    bits = list(bits)
    if len(bits) != rc.n_wires:
        raise ArgumentError(f"expected {rc.n_wires} bits, got {len(bits)}")
    x = sum((int(b) & 1) << i for i, b in enumerate(bits))
    y = simulate_index(rc, x)
    return tuple((y >> i) & 1 for i in range(rc.n_wires))


def simulate_table(rc: ReversibleCircuit, *, max_wires: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Images of every basis index; exponential in the wire count."""
    if rc.n_wires > max_wires:
        raise CapacityError(f"{rc.n_wires} wires exceeds the table cap of {max_wires}")
    return _run(rc.gates, np.arange(1 << rc.n_wires, dtype=np.int64))


def invert(rc: ReversibleCircuit) -> ReversibleCircuit:
    """Gates in reverse order, each replaced by its inverse."""
    return ReversibleCircuit(rc.n_inputs, rc.n_outputs, rc.n_scratch,
                             [gate.dagger() for gate in reversed(rc.gates)])


def lift_to_unitary(rc: ReversibleCircuit, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> g.Gate:
    """The permutation gate on qubits ``0 .. n_wires-1`` realising ``rc``."""
    return g.permutation_gate(simulate_table(rc, max_wires=max_qubits), rc.n_wires)


def check_contract(rc: ReversibleCircuit, bc: BooleanCircuit) -> list:
    """Exhaustively compare ``H(x, y, 0)`` with ``(x, F(x) xor y, 0)``.

    Returns the list of failing ``(x, y)`` pairs; empty means the contract holds.
    """
    m, n = rc.n_inputs, rc.n_outputs
    if (m, n) != (bc.n_inputs, bc.n_outputs):
        raise ArgumentError("register sizes do not match the Boolean circuit")
    f = circuit_function(bc)
    fx = np.array([f(x) for x in range(1 << m)], dtype=np.int64)
    idx = np.arange(1 << (m + n), dtype=np.int64)
    x, y = idx & ((1 << m) - 1), idx >> m
    got = _run(rc.gates, idx)
    want = x | ((fx[x] ^ y) << m)
    bad = np.flatnonzero(got != want)
    return [(int(x[i]), int(y[i])) for i in bad]


def gate_count_bound(bc: BooleanCircuit) -> int:
    return GATE_COUNT_CONSTANT * (bc.output_size + bc.n_inputs + bc.n_outputs) ** 2


def format_reversible(rc: ReversibleCircuit) -> str:
    header = f"# registers {rc.n_inputs} {rc.n_outputs} {rc.n_scratch}\n"
    return header + g.format_circuit(rc.gates)


def parse_reversible(text: str) -> ReversibleCircuit:
    """Inverse of ``format_reversible``; without a header all wires are inputs."""
    regs = None
    for line in text.splitlines():
        parts = line.strip().lstrip("#").split()
        if line.strip().startswith("#") and parts[:1] == ["registers"]:
            try:
                regs = tuple(int(p) for p in parts[1:4])
            except ValueError:
                raise ParseError("malformed registers header") from None
            break
    gates = g.parse_circuit(text)
    if regs is None:
        regs = (g.max_qubit(gates) + 1, 0, 0)
    try:
        return ReversibleCircuit(*regs, gates)
    except (ArgumentError, TypeError) as exc:
        raise ParseError(str(exc)) from None
