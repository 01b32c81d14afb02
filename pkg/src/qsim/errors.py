"""Exception hierarchy shared by every qsim module."""


class QsimError(Exception):
    """Base class for all errors raised by qsim."""


class RangeError(QsimError, ValueError):
    """An index (qubit, basis state, wire) lies outside its register."""


class ArgumentError(QsimError, ValueError):
    """A structurally invalid argument, e.g. a repeated qubit in one gate."""


class CapacityError(QsimError):
    """A request exceeds a configured size cap (qubits, wires, SAT variables)."""


class StateCorruptionError(QsimError):
    """The norm of a state vector drifted beyond the tolerated bound."""


class ParseError(QsimError, ValueError):
    """Malformed circuit text or instance file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
