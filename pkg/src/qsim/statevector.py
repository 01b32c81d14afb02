"""Dense state vectors over n qubits and the in-place gate kernels.

Qubit ``i`` is bit ``i`` of the basis index (little-endian storage).  Text
output that spells a basis state as a bit string writes qubit ``n-1`` first.

Every kernel works on the ``(2,) * n`` reshape of the amplitude array, where
qubit ``q`` lives on axis ``n - 1 - q``; fixing an axis to 0 or 1 with basic
indexing yields a strided view of exactly the amplitudes whose bit ``q`` has
that value, so no index arrays are materialised.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import gates as g
from .errors import ArgumentError, CapacityError, RangeError, StateCorruptionError

logger = logging.getLogger(__name__)

DEFAULT_MAX_QUBITS = 26
NORM_ERROR = 1e-6
NORM_REPORT = 1e-10
_INV_SQRT2 = 1 / math.sqrt(2)


def as_rng(rng) -> np.random.Generator:
    """Accept a Generator, a seed, or None."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass(frozen=True)
class MeasurementOutcome:
    basis_index: int
    probability: float

    def bits(self, n_qubits: int) -> str:
        return format(self.basis_index, f"0{n_qubits}b") if n_qubits else ""


class StateVector:
    """``2**n`` complex128 amplitudes; the register of ``n`` qubits.

    Parameters
    ----------
    amplitudes : array_like
        Length must be a power of two and the vector must be normalised
        to within ``1e-10``.
    max_qubits : int
        Capacity cap; larger registers raise ``CapacityError``.
    copy : bool
        Copy ``amplitudes`` (default) or adopt the given complex128 array.
    """

    def __init__(self, amplitudes, *, max_qubits: int = DEFAULT_MAX_QUBITS, copy: bool = True):
        amps = (np.array if copy else np.asarray)(amplitudes, dtype=np.complex128).ravel()
        size = amps.size
        if size == 0 or size & (size - 1):
            raise ArgumentError(f"amplitude count {size} is not a power of two")
        n = size.bit_length() - 1
        if n > max_qubits:
            raise CapacityError(f"{n} qubits exceeds the cap of {max_qubits}")
        drift = abs(float(np.vdot(amps, amps).real) - 1.0)
        if drift > NORM_REPORT:
            raise ArgumentError(f"amplitudes are not normalised (|norm^2 - 1| = {drift:.3g})")
        self.amplitudes = amps
        self.n_qubits = n
        self.max_qubits = max_qubits

    @classmethod
    def _adopt(cls, amps: np.ndarray, max_qubits: int) -> StateVector:
        obj = cls.__new__(cls)
        obj.amplitudes = amps
        obj.n_qubits = amps.size.bit_length() - 1
        obj.max_qubits = max_qubits
        return obj

    def __len__(self):
        return self.amplitudes.size

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits})"

    def copy(self) -> StateVector:
        return StateVector._adopt(self.amplitudes.copy(), self.max_qubits)

    def norm(self) -> float:
        return math.sqrt(float(np.vdot(self.amplitudes, self.amplitudes).real))

    def check_norm(self) -> float:
        """Return the squared-norm drift; raise past ``NORM_ERROR``, log past ``NORM_REPORT``."""
        drift = abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0)
        if drift > NORM_ERROR:
            raise StateCorruptionError(f"state norm drifted by {drift:.3g}")
        if drift > NORM_REPORT:
            logger.warning("state norm drift %.3g tolerated", drift)
        return drift

    def probability(self, x: int) -> float:
        self._check_index(x)
        return abs(self.amplitudes[x]) ** 2

    def probabilities(self) -> np.ndarray:
        return self.amplitudes.real ** 2 + self.amplitudes.imag ** 2

    def apply(self, gate: g.Gate) -> StateVector:
        apply_gate(self, gate)
        return self

    def apply_circuit(self, circuit: Iterable[g.Gate]) -> StateVector:
        apply_circuit(self, circuit)
        return self

    def measure(self, rng=None) -> MeasurementOutcome:
        return measure(self, rng)

    def sample(self, shots: int, rng=None) -> np.ndarray:
        """Draw ``shots`` basis indices without collapsing the state."""
        probs = self._checked_probabilities()
        cum = np.cumsum(probs)
        u = as_rng(rng).random(shots) * cum[-1]
        return np.minimum(np.searchsorted(cum, u, side="right"), probs.size - 1)

    def tensor(self, other: StateVector) -> StateVector:
        return tensor(self, other)

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, **kwargs) -> StateVector:
        pairs = np.asarray(data["amplitudes"], dtype=float).reshape(-1, 2)
        state = cls(pairs[:, 0] + 1j * pairs[:, 1], **kwargs)
        if state.n_qubits != data["n_qubits"]:
            raise ArgumentError("n_qubits does not match the amplitude count")
        return state

    def _check_index(self, x: int):
        if not 0 <= x < self.amplitudes.size:
            raise RangeError(f"basis index {x} outside [0, 2**{self.n_qubits})")

    def _checked_probabilities(self) -> np.ndarray:
        self.check_norm()
        return self.probabilities()


def basis_state(n: int, x: int = 0, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """The classical state ``|x>`` on ``n`` qubits."""
    if n < 0:
        raise ArgumentError("qubit count must be non-negative")
    if n > max_qubits:
        raise CapacityError(f"{n} qubits exceeds the cap of {max_qubits}")
    if not 0 <= x < 1 << n:
        raise RangeError(f"basis index {x} outside [0, 2**{n})")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[x] = 1.0
    return StateVector._adopt(amps, max_qubits)


def uniform_state(n: int, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Equal-weight superposition of all ``2**n`` classical states."""
    state = basis_state(n, 0, max_qubits=max_qubits)
    state.amplitudes.fill(1 / math.sqrt(1 << n))
    return state


def probability_of(state: StateVector, x: int) -> float:
    return state.probability(x)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """``a (x) b`` with ``b`` on the high qubits: amp(y * 2**n_a + x) = a(x) b(y)."""
    cap = max(a.max_qubits, b.max_qubits)
    if a.n_qubits + b.n_qubits > cap:
        raise CapacityError(f"{a.n_qubits + b.n_qubits} qubits exceeds the cap of {cap}")
    return StateVector._adopt(np.kron(b.amplitudes, a.amplitudes), cap)


def measure(state: StateVector, rng=None) -> MeasurementOutcome:
    """Sample a basis index with probability |amp|^2 and collapse onto it."""
    probs = state._checked_probabilities()
    cum = np.cumsum(probs)
    u = as_rng(rng).random() * cum[-1]
    x = min(int(np.searchsorted(cum, u, side="right")), probs.size - 1)
    p = float(probs[x])
    state.amplitudes.fill(0)
    state.amplitudes[x] = 1.0
    return MeasurementOutcome(x, p)


def apply_circuit(state: StateVector, circuit: Iterable[g.Gate]) -> StateVector:
    for gate in circuit:
        apply_gate(state, gate)
    state.check_norm()
    return state


def apply_gate(state: StateVector, gate: g.Gate) -> StateVector:
    """Apply ``gate`` in place and return ``state``."""
    n = state.n_qubits
    for q in gate.qubits:
        if q >= n:
            raise RangeError(f"{gate.kind} touches qubit {q} but the register has {n}")
    _KERNELS[gate.kind](state.amplitudes, n, gate)
    return state


def _index(n, fixed):
    """Basic-indexing tuple for the (2,)*n view with qubit -> bit pins."""
    idx = [slice(None)] * n
    for q, bit in fixed.items():
        idx[n - 1 - q] = bit
    return tuple(idx)


def _swap_slices(view, i0, i1):
    tmp = view[i0].copy()
    view[i0] = view[i1]
    view[i1] = tmp


def _k_u1(amps, n, gate):
    q = gate.qubits[0]
    v = amps.reshape(-1, 2, 1 << q)
    lo, hi = v[:, 0, :], v[:, 1, :]
    a = lo.copy()
    lo += hi
    lo *= _INV_SQRT2
    np.subtract(a, hi, out=hi)
    hi *= _INV_SQRT2


def _k_u2(amps, n, gate):
    k, j = gate.qubits
    amps.reshape((2,) * n)[_index(n, {k: 1, j: 1})] *= gate.phase


def _k_phase_flip(amps, n, gate):
    pins = {q: (gate.value >> i) & 1 for i, q in enumerate(gate.qubits)}
    if gate.complement:
        amps *= -1
    amps.reshape((2,) * n)[_index(n, pins)] *= -1


def _k_controlled_not(amps, n, gate):
    *controls, t = gate.qubits
    pins = {c: 1 for c in controls}
    view = amps.reshape((2,) * n)
    _swap_slices(view, _index(n, {**pins, t: 0}), _index(n, {**pins, t: 1}))


def _k_swap(amps, n, gate):
    a, b = gate.qubits
    view = amps.reshape((2,) * n)
    _swap_slices(view, _index(n, {a: 0, b: 1}), _index(n, {a: 1, b: 0}))


def _k_permutation(amps, n, gate):
    table = gate.table
    s = gate.span
    if gate.qubits == tuple(range(n)):
        out = np.empty_like(amps)
        out[table] = amps
        amps[:] = out
        return
    view = amps.reshape((2,) * n)
    src = [n - 1 - q for q in reversed(gate.qubits)]
    dst = list(range(n - s, n))
    moved = np.moveaxis(view, src, dst)
    flat = moved.reshape(-1, 1 << s)
    out = np.empty_like(flat)
    out[:, table] = flat
    moved[...] = out.reshape(moved.shape)


_KERNELS = {
    g.U1: _k_u1,
    g.U2: _k_u2,
    g.PHASE_FLIP: _k_phase_flip,
    g.NOT: _k_controlled_not,
    g.CNOT: _k_controlled_not,
    g.TOFFOLI: _k_controlled_not,
    g.SWAP: _k_swap,
    g.PERMUTATION: _k_permutation,
}
