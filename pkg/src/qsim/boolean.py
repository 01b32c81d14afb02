"""Classical Boolean layer: circuits over a fixed gate basis, Boolean
polynomials, SAT instances with a brute-force solver, and the Cantor-style
pairing of positive integer pairs.

Wire numbering in a ``BooleanCircuit``: inputs are wires ``0..m-1`` and each
gate appends its outputs as the next fresh wires (FANOUT appends two).

Bit conventions: a Boolean polynomial on variables ``x1..xm`` stores each
monomial as a bitmask with bit ``i-1`` standing for ``xi``; truth tables are
indexed by ``x = sum(x_i << (i-1))``.  SAT variables are 1-indexed and an
assignment is a 0-indexed bit sequence with ``v[k-1]`` the value of ``x_k``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, CapacityError, ParseError

ID = "ID"
CONST1 = "CONST1"
XOR = "XOR"
AND = "AND"
FANOUT = "FANOUT"

BASIS = (ID, CONST1, XOR, AND, FANOUT)
ARITY = {ID: 1, CONST1: 0, XOR: 2, AND: 2, FANOUT: 1}
OUTPUTS = {ID: 1, CONST1: 1, XOR: 1, AND: 1, FANOUT: 2}

DEFAULT_MAX_SAT_VARS = 24


@dataclass(frozen=True)
class BoolGate:
    kind: str
    inputs: tuple = ()

    def __post_init__(self):
        if self.kind not in BASIS:
            raise ArgumentError(f"{self.kind!r} is not in the gate basis {BASIS}")
        object.__setattr__(self, "inputs", tuple(int(w) for w in self.inputs))
        if len(self.inputs) != ARITY[self.kind]:
            raise ArgumentError(f"{self.kind} takes {ARITY[self.kind]} inputs, got {len(self.inputs)}")

    @property
    def n_outputs(self) -> int:
        return OUTPUTS[self.kind]

    def evaluate(self, args: Sequence[int]) -> tuple:
        if self.kind == ID:
            return (args[0],)
        if self.kind == CONST1:
            return (1,)
        if self.kind == XOR:
            return (args[0] ^ args[1],)
        if self.kind == AND:
            return (args[0] & args[1],)
        return (args[0], args[0])


@dataclass(frozen=True)
class BooleanCircuit:
    """Straight-line circuit; acyclic because gates only read earlier wires."""

    n_inputs: int
    gates: tuple
    outputs: tuple

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "outputs", tuple(int(w) for w in self.outputs))
        if self.n_inputs < 0:
            raise ArgumentError("n_inputs must be non-negative")
        defined = self.n_inputs
        for pos, gate in enumerate(self.gates):
            for w in gate.inputs:
                if not 0 <= w < defined:
                    raise ArgumentError(f"gate {pos} ({gate.kind}) reads undefined wire {w}")
            defined += gate.n_outputs
        for w in self.outputs:
            if not 0 <= w < defined:
                raise ArgumentError(f"output wire {w} is undefined")

    @property
    def n_wires(self) -> int:
        return self.n_inputs + self.output_size

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    @property
    def output_size(self) -> int:
        """Total number of gate output wires (FANOUT counts 2)."""
        return sum(gate.n_outputs for gate in self.gates)

    def __len__(self):
        return len(self.gates)

    def evaluate(self, bits: Sequence[int]) -> tuple:
        return eval_circuit(self, bits)


def eval_circuit(bc: BooleanCircuit, bits: Sequence[int]) -> tuple:
    """Evaluate wires in order and return the designated outputs."""
    bits = [int(b) & 1 for b in bits]
    if len(bits) != bc.n_inputs:
        raise ArgumentError(f"expected {bc.n_inputs} input bits, got {len(bits)}")
    wires = bits
    for gate in bc.gates:
        wires.extend(gate.evaluate([wires[w] for w in gate.inputs]))
    return tuple(wires[w] for w in bc.outputs)


def circuit_function(bc: BooleanCircuit):
    """Map an input integer (bit i = input wire i) to an output integer."""
    def f(x: int) -> int:
        out = eval_circuit(bc, [(x >> i) & 1 for i in range(bc.n_inputs)])
        return sum(b << i for i, b in enumerate(out))
    return f


def parse_boolean_circuit(text: str) -> BooleanCircuit:
    """Read the line format::

        inputs 2
        AND 0 1        # defines wire 2
        FANOUT 2       # defines wires 3 and 4
        outputs 3 4
    """
    n_inputs = None
    outputs = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise ParseError(f"non-integer argument in {raw.strip()!r}", lineno) from None
        word_u = word.upper()
        if word.lower() == "inputs":
            if n_inputs is not None or len(nums) != 1:
                raise ParseError("expected exactly one 'inputs <m>' line", lineno)
            n_inputs = nums[0]
        elif word.lower() == "outputs":
            if outputs is not None:
                raise ParseError("duplicate 'outputs' line", lineno)
            outputs = nums
        elif word_u in BASIS:
            try:
                gates.append(BoolGate(word_u, nums))
            except ArgumentError as exc:
                raise ParseError(str(exc), lineno) from None
        else:
            raise ParseError(f"unknown keyword {word!r}", lineno)
    if n_inputs is None or outputs is None:
        raise ParseError("circuit needs 'inputs' and 'outputs' lines")
    try:
        return BooleanCircuit(n_inputs, gates, outputs)
    except ArgumentError as exc:
        raise ParseError(str(exc)) from None


def format_boolean_circuit(bc: BooleanCircuit) -> str:
    lines = [f"inputs {bc.n_inputs}"]
    lines += [" ".join([gate.kind, *map(str, gate.inputs)]) for gate in bc.gates]
    lines.append(" ".join(["outputs", *map(str, bc.outputs)]))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BooleanPolynomial:
    """Multilinear polynomial over F2, a set of monomial bitmasks (0 is the constant 1)."""

    monomials: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "monomials", frozenset(int(m) for m in self.monomials))

    @classmethod
    def constant(cls, value: int) -> BooleanPolynomial:
        return cls(frozenset({0}) if value & 1 else frozenset())

    @classmethod
    def variable(cls, i: int) -> BooleanPolynomial:
        """The polynomial ``x_i`` (1-indexed)."""
        if i < 1:
            raise ArgumentError("variables are 1-indexed")
        return cls(frozenset({1 << (i - 1)}))

    def __add__(self, other: BooleanPolynomial) -> BooleanPolynomial:
        return BooleanPolynomial(self.monomials ^ other.monomials)

    def __mul__(self, other: BooleanPolynomial) -> BooleanPolynomial:
        out = set()
        for a in self.monomials:
            for b in other.monomials:
                out ^= {a | b}  # x^2 = x
        return BooleanPolynomial(frozenset(out))

    def __call__(self, x) -> int:
        """Evaluate at a bit sequence or at an integer point."""
        if not isinstance(x, (int, np.integer)):
            x = sum((int(b) & 1) << i for i, b in enumerate(x))
        return sum((m & x) == m for m in self.monomials) & 1

    def __bool__(self):
        return bool(self.monomials)

    def sorted_monomials(self) -> list:
        return sorted(self.monomials, key=lambda m: (bin(m).count("1"), m))

    def __str__(self):
        if not self.monomials:
            return "0"
        terms = []
        for m in sorted(self.monomials, key=lambda m: (-bin(m).count("1"), m)):
            names = [f"x{i + 1}" for i in range(m.bit_length()) if m >> i & 1]
            terms.append("*".join(names) if names else "1")
        return " + ".join(terms)


def interpolate(table: Sequence[int]) -> BooleanPolynomial:
    """The unique multilinear polynomial agreeing with ``table`` on F2^m.

    Summing ``f(y) * prod_i (x_i + y_i + 1)`` over all points y gives, for each
    monomial S, the coefficient ``sum_{y subset of S} f(y)``; the in-place
    butterfly below evaluates those subset sums for all S in m passes.
    """
    coeffs = np.array(table, dtype=np.uint8).ravel() & 1
    size = coeffs.size
    if size == 0 or size & (size - 1):
        raise ArgumentError(f"truth table length {size} is not a power of two")
    m = size.bit_length() - 1
    for i in range(m):
        view = coeffs.reshape(-1, 2, 1 << i)
        view[:, 1, :] ^= view[:, 0, :]
    return BooleanPolynomial(frozenset(np.flatnonzero(coeffs).tolist()))


def truth_table(poly_or_func, m: int) -> list:
    """Values at ``x = 0 .. 2**m - 1`` of a polynomial or integer function."""
    return [int(poly_or_func(x)) & 1 for x in range(1 << m)]


@dataclass(frozen=True)
class SatInstance:
    """``m`` variables and clauses ``(S_i, T_i)``; clause i fails exactly when every
    variable in S_i is 0 and every variable in T_i is 1."""

    m: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple((frozenset(map(int, s)), frozenset(map(int, t))) for s, t in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.m < 0:
            raise ArgumentError("variable count must be non-negative")
        for i, (s, t) in enumerate(clauses):
            bad = [k for k in s | t if not 1 <= k <= self.m]
            if bad:
                raise ArgumentError(f"clause {i} names variables {sorted(bad)} outside 1..{self.m}")

    @property
    def size(self) -> int:
        return self.m * len(self.clauses)

    def is_3sat(self) -> bool:
        return all(len(s | t) == 3 for s, t in self.clauses)

    def polynomial(self) -> BooleanPolynomial:
        one = BooleanPolynomial.constant(1)
        out = one
        for s, t in self.clauses:
            term = one
            for k in s:
                term = term * (one + BooleanPolynomial.variable(k))
            for j in t:
                term = term * BooleanPolynomial.variable(j)
            out = out * (one + term)
        return out

    def to_dict(self) -> dict:
        return {"m": self.m,
                "clauses": [{"S": sorted(s), "T": sorted(t)} for s, t in self.clauses]}

    @classmethod
    def from_dict(cls, data: dict) -> SatInstance:
        try:
            return cls(int(data["m"]), [(c.get("S", []), c.get("T", [])) for c in data["clauses"]])
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"malformed SAT instance: {exc}") from None
        except ArgumentError as exc:
            raise ParseError(str(exc)) from None

    @classmethod
    def from_json(cls, text: str) -> SatInstance:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ParseError("SAT instance must be a JSON object")
        return cls.from_dict(data)


def sat_eval(u: SatInstance, v: Sequence[int]) -> int:
    """``prod_i (1 + prod_{k in S_i}(1 + v_k) * prod_{j in T_i} v_j)`` over F2."""
    if len(v) != u.m:
        raise ArgumentError(f"assignment has {len(v)} bits, instance has {u.m} variables")
    result = 1
    for s, t in u.clauses:
        term = 1
        for k in s:
            term &= 1 ^ (v[k - 1] & 1)
        for j in t:
            term &= v[j - 1] & 1
        result &= 1 ^ term
    return result


def sat_brute_force(u: SatInstance, *, max_vars: int = DEFAULT_MAX_SAT_VARS,
                    chunk: int = 1 << 20):
    """Lexicographically least satisfying assignment, or None.

    Assignments are enumerated as integers with ``x_1`` in the most
    significant position, so numeric order is lexicographic order.
    """
    m = u.m
    if m > max_vars:
        raise CapacityError(f"{m} variables exceeds the brute-force cap of {max_vars}")
    bit = {k: 1 << (m - k) for k in range(1, m + 1)}
    masks = np.array([(sum(bit[k] for k in s), sum(bit[j] for j in t)) for s, t in u.clauses],
                     dtype=np.int64).reshape(-1, 2)
    total = 1 << m
    for start in range(0, total, chunk):
        z = np.arange(start, min(start + chunk, total), dtype=np.int64)
        ok = np.ones(z.size, dtype=bool)
        for smask, tmask in masks:
            ok &= ~(((z & smask) == 0) & ((z & tmask) == tmask))
        hits = np.flatnonzero(ok)
        if hits.size:
            best = int(z[hits[0]])
            return tuple((best >> (m - k)) & 1 for k in range(1, m + 1))
    return None


def pairing(m: int, n: int) -> int:
    """Number the pair (m, n) of positive integers as ``m + (m+n-1)(m+n-2)/2``."""
    if m < 1 or n < 1:
        raise ArgumentError("pairing is defined on positive integers")
    return m + (m + n - 1) * (m + n - 2) // 2


def unpairing(z: int) -> tuple:
    """Inverse of ``pairing``."""
    if z < 1:
        raise ArgumentError("pairing values are positive")
    # diagonal d = m + n - 1 is the largest d with d(d-1)/2 < z
    d = (1 + math.isqrt(8 * z - 7)) // 2
    while d * (d - 1) // 2 >= z:
        d -= 1
    while (d + 1) * d // 2 < z:
        d += 1
    m = z - d * (d - 1) // 2
    return m, d + 1 - m


def bits_of(x: int, width: int) -> tuple:
    return tuple((x >> i) & 1 for i in range(width))


def from_bits(bits: Iterable[int]) -> int:
    return sum((int(b) & 1) << i for i, b in enumerate(bits))
