"""Grover search for a single marked point.

One step is ``T = V J V I_F``: the oracle reflection ``I_F`` negates the
marked state, ``V`` puts a U1 on every qubit, and ``J = -I_delta`` fixes
``|0...0>`` while negating everything orthogonal to it.  ``V J V`` therefore
equals ``2|xi><xi| - I`` exactly, with ``xi`` the uniform superposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import gates as g
from .errors import ArgumentError, CapacityError, RangeError
from .statevector import DEFAULT_MAX_QUBITS, StateVector, apply_circuit, as_rng, uniform_state

# beyond this N, 1 - 2/N rounds to 1 in double precision
_ARCCOS_LIMIT = 1 << 52


class PhaseOracle:
    """Black-box ``|x> -> (-1)^F(x) |x>`` that counts its invocations.

    Give either the marked point ``target`` or a ``predicate`` on basis
    indices; a predicate is tabulated once and must mark exactly one point.
    """

    def __init__(self, n: int, target: int | None = None,
                 predicate: Callable[[int], bool] | None = None):
        if (target is None) == (predicate is None):
            raise ArgumentError("give exactly one of target or predicate")
        if predicate is not None:
            marked = [x for x in range(1 << n) if predicate(x)]
            if len(marked) != 1:
                raise ArgumentError(f"predicate marks {len(marked)} points; single-target search needs 1")
            target = marked[0]
        if not 0 <= target < 1 << n:
            raise RangeError(f"target {target} outside [0, 2**{n})")
        self.n = n
        self._target = target
        self._gate = oracle_reflection(target, n)
        self.calls = 0

    def apply(self, state: StateVector) -> StateVector:
        self.calls += 1
        return state.apply(self._gate)

    def reveal(self) -> int:
        """The marked point; for reporting only, never used by the search."""
        return self._target


def oracle_reflection(x0: int, n: int) -> g.Gate:
    """Diagonal gate with -1 at ``x0`` and +1 elsewhere."""
    return g.phase_flip_at(x0, n)


def diffusion(n: int) -> list:
    """``V J V`` as a gate list: U1 layer, reflection fixing |0>, U1 layer."""
    layer = [g.u1(q) for q in range(n)]
    return layer + [g.phase_flip_at(0, n, complement=True)] + layer


def grover_iterations(N: int) -> int:
    """Round(initial angle / rotation angle) for a single marked point among ``N``.

    The rotation angle satisfies ``cos(phi_N) = 1 - 2/N``; the initial angle
    between the uniform state and the target is ``arccos(1/sqrt(N))``.  Past
    ``2**52`` the arccos form loses all precision and ``floor(pi sqrt(N) / 4)``
    is returned instead.
    """
    if N < 1:
        raise ArgumentError("search space must be non-empty")
    if N > _ARCCOS_LIMIT:
        return math.floor(math.pi * math.sqrt(N) / 4)
    phi = math.acos(1 / math.sqrt(N))
    phi_n = math.acos(1 - 2 / N)
    return round(phi / phi_n)


@dataclass(frozen=True)
class GroverRun:
    n: int
    target: int
    iterations: int
    trace: tuple
    oracle_calls: int
    candidate: int

    @property
    def success_probability(self) -> float:
        return self.trace[-1]

    @property
    def success(self) -> bool:
        return self.candidate == self.target


def grover_step(state: StateVector, oracle: PhaseOracle) -> StateVector:
    oracle.apply(state)
    return apply_circuit(state, diffusion(state.n_qubits))


def grover_search(n: int, x0: int | None = None, rng=None, *, oracle: PhaseOracle | None = None,
                  iterations: int | None = None, max_qubits: int = DEFAULT_MAX_QUBITS):
    """Iterate ``T`` from the uniform state, measure, and return ``(candidate, run)``.

    ``run.trace[k]`` is the probability of the marked point after k steps.
    """
    if n > max_qubits:
        raise CapacityError(f"{n} qubits exceeds the cap of {max_qubits}")
    if n < 1:
        raise ArgumentError("Grover search needs at least one qubit")
    if oracle is None:
        if x0 is None:
            raise ArgumentError("give a target x0 or an oracle")
        oracle = PhaseOracle(n, target=x0)
    target = oracle.reveal()
    if iterations is None:
        iterations = grover_iterations(1 << n)
    state = uniform_state(n, max_qubits=max_qubits)
    trace = [state.probability(target)]
    for _ in range(iterations):
        grover_step(state, oracle)
        trace.append(state.probability(target))
    outcome = state.measure(as_rng(rng))
    run = GroverRun(n, target, iterations, tuple(float(p) for p in trace), oracle.calls,
                    outcome.basis_index)
    return outcome.basis_index, run


def success_probability(n: int, k: int) -> float:
    """Closed form ``sin^2((2k+1) theta)`` with ``sin(theta) = 1/sqrt(N)``."""
    theta = math.asin(1 / math.sqrt(1 << n))
    return math.sin((2 * k + 1) * theta) ** 2


def plane_components(state: np.ndarray, x0: int):
    """Split a state into its components along ``xi``, along ``|x0>`` orthogonalised
    against ``xi``, and the norm of what is left over."""
    N = state.size
    xi = np.full(N, 1 / math.sqrt(N))
    e = -xi * xi[x0]
    e[x0] += 1
    e /= np.linalg.norm(e)
    a, b = np.vdot(xi, state), np.vdot(e, state)
    rest = state - a * xi - b * e
    return a, b, float(np.linalg.norm(rest))
