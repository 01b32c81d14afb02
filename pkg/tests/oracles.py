"""Independent reference computations used as test oracles.

Nothing here calls the state-vector kernels: full operators are assembled
from local matrices by explicit Kronecker products with identities.
"""

import itertools
import math
from fractions import Fraction

import numpy as np

from qsim import gates as g

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)


def kron_all(factors_by_qubit, n):
    """Kronecker product with qubit n-1 leftmost (little-endian index)."""
    out = np.eye(1, dtype=complex)
    for q in reversed(range(n)):
        out = np.kron(out, factors_by_qubit.get(q, I2))
    return out


def local_to_full(local, qubits, n):
    """Embed a local operator on ``qubits`` into n qubits.

    Expands ``local`` in the basis of single-qubit matrix units
    ``|a><b|`` and tensors each term with identities.
    """
    s = len(qubits)
    full = np.zeros((1 << n, 1 << n), dtype=complex)
    units = {(0, 0): P0, (1, 1): P1,
             (0, 1): np.array([[0, 1], [0, 0]], dtype=complex),
             (1, 0): np.array([[0, 0], [1, 0]], dtype=complex)}
    for out_l in range(1 << s):
        for in_l in range(1 << s):
            coeff = local[out_l, in_l]
            if coeff == 0:
                continue
            factors = {q: units[((out_l >> i) & 1, (in_l >> i) & 1)] for i, q in enumerate(qubits)}
            full += coeff * kron_all(factors, n)
    return full


def textbook_matrix(gate):
    """Local matrix written from gate definitions, not from qsim.gate_matrix."""
    k = gate.kind
    if k == g.U1:
        return H
    if k == g.U2:
        kk, jj = gate.qubits
        return np.diag([1, 1, 1, np.exp(1j * gate.sign * math.pi / 2 ** (jj - kk))])
    if k == g.NOT:
        return X
    s = gate.span
    m = np.zeros((1 << s, 1 << s), dtype=complex)
    for l in range(1 << s):
        bits = [(l >> i) & 1 for i in range(s)]
        if k == g.CNOT:
            out = bits[:]
            out[1] ^= bits[0]
        elif k == g.TOFFOLI:
            out = bits[:]
            out[2] ^= bits[0] & bits[1]
        elif k == g.SWAP:
            out = [bits[1], bits[0]]
        elif k == g.PERMUTATION:
            m[gate.table[l], l] = 1
            continue
        elif k == g.PHASE_FLIP:
            sign = -1 if l == gate.value else 1
            m[l, l] = -sign if gate.complement else sign
            continue
        m[sum(b << i for i, b in enumerate(out)), l] = 1
    return m


def full_operator(gate, n):
    return local_to_full(textbook_matrix(gate), gate.qubits, n)


def circuit_operator(circuit, n):
    op = np.eye(1 << n, dtype=complex)
    for gate in circuit:
        op = full_operator(gate, n) @ op
    return op


def random_state(rng, n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def dft(n):
    N = 1 << n
    return np.array([[np.exp(2j * math.pi * c * x / N) for x in range(N)] for c in range(N)]) / math.sqrt(N)


def reverse_bits(x, n):
    return int(format(x, f"0{n}b")[::-1], 2) if n else 0


def brute_force_approximation(c, N, bound):
    """Closest fraction with denominator < bound, ties to the smaller denominator;
    None unless it lies strictly within 1/(2N) of c/N."""
    target = Fraction(c, N)
    best = None
    for q in range(1, bound):
        for p in (math.floor(target * q), math.ceil(target * q)):
            f = Fraction(p, q)
            key = (abs(target - f), f.denominator)
            if best is None or key < best[0]:
                best = (key, f)
    f = best[1]
    if abs(target - f) < Fraction(1, 2 * N):
        return f.numerator, f.denominator
    return None


def brute_force_approximation_table(N, bound):
    """Vectorised exhaustive scan for every c < N at once.

    Returns integer arrays ``(d, r)`` with ``r = 0`` where no fraction qualifies.
    Candidates are floor and ceil of ``c q / N`` for each ``q < bound``; the error
    ``|c q - p N| / q`` is compared as a float, which separates distinct rationals
    with denominators this small and maps equal rationals to equal floats.
    """
    c = np.arange(N, dtype=np.int64)[:, None]
    q = np.arange(1, max(bound, 1), dtype=np.int64)[None, :]
    if q.size == 0:
        zeros = np.zeros(N, dtype=np.int64)
        return zeros, zeros.copy()
    lo = (c * q) // N
    p = np.concatenate([lo, lo + 1], axis=1)
    qq = np.concatenate([q, q], axis=1).repeat(N, axis=0)
    err = np.abs(c * qq - p * N) / qq
    order = np.lexsort((qq, err), axis=1)[:, 0]
    rows = np.arange(N)
    d, r = p[rows, order], qq[rows, order]
    g = np.gcd(d, r)
    d, r = d // g, r // g
    ok = 2 * np.abs(c[:, 0] * r - d * N) < r
    return np.where(ok, d, 0), np.where(ok, r, 0)


def all_bit_vectors(m):
    return itertools.product((0, 1), repeat=m)


def random_boolean_circuit(rng, m, n, n_gates):
    """Random well-formed circuit over the basis; outputs drawn from all wires."""
    from qsim.boolean import ARITY, BASIS, OUTPUTS, BoolGate, BooleanCircuit

    gates = []
    defined = m
    for _ in range(n_gates):
        kinds = [k for k in BASIS if ARITY[k] == 0 or defined > 0]
        kind = kinds[rng.integers(len(kinds))]
        args = [int(rng.integers(defined)) for _ in range(ARITY[kind])]
        gates.append(BoolGate(kind, args))
        defined += OUTPUTS[kind]
    if defined == 0:
        gates.append(BoolGate("CONST1"))
        defined = 1
    outputs = [int(rng.integers(defined)) for _ in range(n)]
    return BooleanCircuit(m, gates, outputs)


def small_circuit_corpus(max_inputs=3, max_outputs=3, max_gates=2):
    """Every circuit with at most ``max_gates`` gates and every wiring, with
    outputs taken as the last n defined wires (n <= max_outputs)."""
    from qsim.boolean import ARITY, BASIS, OUTPUTS, BoolGate, BooleanCircuit

    def extend(prefix, defined, depth):
        yield prefix, defined
        if depth == 0:
            return
        for kind in BASIS:
            for args in itertools.product(range(defined), repeat=ARITY[kind]):
                yield from extend(prefix + [BoolGate(kind, args)], defined + OUTPUTS[kind], depth - 1)

    for m in range(max_inputs + 1):
        for gates, defined in extend([], m, max_gates):
            for n in range(1, min(max_outputs, defined) + 1):
                yield BooleanCircuit(m, gates, range(defined - n, defined))


def delta_expansion(table):
    """sum_y f(y) prod_i (x_i + y_i + 1), expanded monomial by monomial.

    The factor is x_i when y_i = 1 and (x_i + 1) when y_i = 0, so each y with
    f(y) = 1 contributes every monomial containing the support of y.
    """
    m = len(table).bit_length() - 1
    poly = set()
    for y, fy in enumerate(table):
        if not fy:
            continue
        free = [i for i in range(m) if not y >> i & 1]
        for r in range(len(free) + 1):
            for extra in itertools.combinations(free, r):
                poly ^= {y | sum(1 << i for i in extra)}
    return frozenset(poly)


def clause_semantics(u, v):
    return int(all(not (all(v[k - 1] == 0 for k in s) and all(v[j - 1] == 1 for j in t))
                   for s, t in u.clauses))


def contract_by_simulation(bc, rc):
    """H(x, y, 0) == (x, F(x) xor y, 0), checked one bit vector at a time."""
    from qsim.boolean import eval_circuit
    from qsim.reversible import simulate

    m, n, L = rc.n_inputs, rc.n_outputs, rc.n_scratch
    for x in itertools.product((0, 1), repeat=m):
        fx = eval_circuit(bc, x)
        for y in itertools.product((0, 1), repeat=n):
            out = simulate(rc, x + y + (0,) * L)
            want = x + tuple(a ^ b for a, b in zip(fx, y)) + (0,) * L
            if out != want:
                return False
    return True
