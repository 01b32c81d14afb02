"""Dense state-vector quantum circuit simulator with Grover search and Shor factoring."""

__version__ = "0.1.0"

from .errors import (
    ArgumentError,
    CapacityError,
    ParseError,
    QsimError,
    RangeError,
    StateCorruptionError,
)
from .gates import Gate, cnot, not_gate, swap, toffoli, u1, u2
from .grover import grover_iterations, grover_search
from .qft import dft_matrix, qft_circuit, qft_circuit_bitrev
from .reversible import ReversibleCircuit, check_contract, compile_circuit
from .shor import FactorConfig, choose_params, factor, order_classical
from .statevector import StateVector, apply_circuit, basis_state, measure, uniform_state

__all__ = [
    "__version__",
    "ArgumentError", "CapacityError", "ParseError", "QsimError", "RangeError",
    "StateCorruptionError",
    "Gate", "cnot", "not_gate", "swap", "toffoli", "u1", "u2",
    "grover_iterations", "grover_search",
    "dft_matrix", "qft_circuit", "qft_circuit_bitrev",
    "ReversibleCircuit", "check_contract", "compile_circuit",
    "FactorConfig", "choose_params", "factor", "order_classical",
    "StateVector", "apply_circuit", "basis_state", "measure", "uniform_state",
]
