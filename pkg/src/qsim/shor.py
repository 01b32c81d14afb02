"""Shor factoring: parameter choice, the classical reduction from factoring
to order finding, the simulated period-finding run, its exact outcome
distribution, continued-fraction decoding, and the retry loop.

Register layout for one run on ``n + w`` qubits (``w = M.bit_length()``):
qubits ``0..n-1`` hold ``a``, qubits ``n..n+w-1`` hold the residue register.
A run

1. puts U1 on every ``a`` qubit,
2. applies the basis permutation ``(a, y) -> (a, y xor t**a mod M)``,
3. applies the bit-reversed QFT to the ``a`` qubits,
4. measures both registers; the ``a`` bits are read back in reverse to give ``c``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import gates as g
from .errors import ArgumentError, CapacityError
from .qft import bit_reverse, qft_circuit_bitrev
from .statevector import DEFAULT_MAX_QUBITS, apply_circuit, apply_gate, as_rng, basis_state

logger = logging.getLogger(__name__)


class UnsuitableModulus(ArgumentError):
    """M is even, prime, a prime power, or too small to factor this way."""


def mod_pow(base: int, exp: int, mod: int) -> int:
    """``base**exp % mod`` by repeated squaring."""
    if exp < 0:
        raise ArgumentError("negative exponent")
    if mod == 1:
        return 0
    result = 1
    base %= mod
    while exp:
        if exp & 1:
            result = result * base % mod
        base = base * base % mod
        exp >>= 1
    return result


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for desk-scale moduli."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def integer_root(x: int, k: int) -> int:
    """``floor(x ** (1/k))`` in exact integer arithmetic."""
    if x < 0 or k < 1:
        raise ArgumentError("integer_root needs x >= 0 and k >= 1")
    lo, hi = 0, 1 << (x.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def prime_power(M: int):
    """``(p, k)`` with ``M = p**k``, p prime and k >= 1, or None."""
    if is_prime(M):
        return M, 1
    for k in range(2, M.bit_length() + 1):
        r = integer_root(M, k)
        if r ** k == M and is_prime(r):
            return r, k
    return None


def default_runs_per_t(M: int) -> int:
    return max(4, math.ceil(3 * math.log2(math.log2(M))))


def default_t_draws(M: int) -> int:
    return math.ceil(math.log2(M))


@dataclass(frozen=True)
class ShorParams:
    M: int
    n: int
    t: int | None = None
    max_runs_per_t: int = 4
    max_t_draws: int = 4

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def residue_bits(self) -> int:
        return self.M.bit_length()

    @property
    def n_qubits(self) -> int:
        return self.n + self.residue_bits

    def with_t(self, t: int) -> ShorParams:
        if not 1 < t < self.M:
            raise ArgumentError(f"base t={t} must satisfy 1 < t < {self.M}")
        if math.gcd(t, self.M) != 1:
            raise ArgumentError(f"base t={t} shares the factor {math.gcd(t, self.M)} with {self.M}")
        return replace(self, t=t)


def check_modulus(M: int):
    if M < 3:
        raise UnsuitableModulus(f"M={M} is too small")
    if M % 2 == 0:
        raise UnsuitableModulus(f"M={M} is even")
    pp = prime_power(M)
    if pp is not None:
        p, k = pp
        raise UnsuitableModulus(f"M={M} is prime" if k == 1 else f"M={M} is a prime power {p}^{k}")


def choose_params(M: int, *, max_runs_per_t: int | None = None,
                  max_t_draws: int | None = None) -> ShorParams:
    """Validate ``M`` and pick the unique ``n`` with ``M**2 < 2**n < 2 * M**2``."""
    check_modulus(M)
    # M*M is odd, so the next power of two above it is strictly below 2*M*M
    n = (M * M).bit_length()
    return ShorParams(
        M, n,
        max_runs_per_t=default_runs_per_t(M) if max_runs_per_t is None else max_runs_per_t,
        max_t_draws=default_t_draws(M) if max_t_draws is None else max_t_draws,
    )


def order_classical(t: int, M: int) -> int:
    """Least ``r >= 1`` with ``t**r = 1 (mod M)``, by brute force."""
    if math.gcd(t, M) != 1:
        raise ArgumentError(f"gcd({t}, {M}) != 1, so t has no order mod M")
    r, x = 1, t % M
    while x != 1 % M:
        x = x * t % M
        r += 1
    return r


def classical_postprocess(t: int, r: int | None, M: int):
    """A proper divisor of M from ``gcd(t**(r/2) +- 1, M)``, or None."""
    if r is None or r < 1 or r % 2:
        return None
    h = mod_pow(t, r // 2, M)
    for cand in (math.gcd(h + 1, M), math.gcd(h - 1, M)):
        if 1 < cand < M:
            return cand
    return None


def residues(t: int, M: int, N: int) -> np.ndarray:
    """``t**a mod M`` for ``a = 0 .. N-1``."""
    out = np.empty(N, dtype=np.int64)
    x = 1 % M
    for a in range(N):
        out[a] = x
        x = x * t % M
    return out


def modexp_permutation(t: int, M: int, params) -> np.ndarray:
    """Table of ``(a, y) -> (a, y xor (t**a mod M))`` on index ``a + y * 2**n``.

    ``params`` is a ShorParams or the ``a``-register width ``n`` itself.
    """
    n = params.n if isinstance(params, ShorParams) else int(params)
    N = 1 << n
    w = M.bit_length()
    idx = np.arange(N << w, dtype=np.int64)
    a, y = idx & (N - 1), idx >> n
    return a | ((y ^ residues(t, M, N)[a]) << n)


@lru_cache(maxsize=32)
def _period_state(M: int, n: int, t: int, max_qubits: int):
    params = ShorParams(M, n, t)
    if params.n_qubits > max_qubits:
        raise CapacityError(f"M={M} needs {params.n_qubits} qubits, cap is {max_qubits}")
    state = basis_state(params.n_qubits, 0, max_qubits=max_qubits)
    apply_circuit(state, [g.u1(q) for q in range(n)])
    apply_gate(state, g.permutation_gate(modexp_permutation(t, M, n), params.n_qubits))
    apply_circuit(state, qft_circuit_bitrev(n))
    state.amplitudes.setflags(write=False)
    return state


def period_finding_state(params: ShorParams, *, max_qubits: int = DEFAULT_MAX_QUBITS):
    """The register just before measurement (a fresh, writable copy)."""
    if params.t is None:
        raise ArgumentError("params carry no base t")
    return _period_state(params.M, params.n, params.t, max_qubits).copy()


def decode_measurement(index: int, n: int) -> tuple:
    """Split a measured basis index into ``(c, residue)``."""
    return bit_reverse(index & ((1 << n) - 1), n), index >> n


@dataclass(frozen=True)
class ShorOutcome:
    t: int
    c: int | None
    residue: int | None
    d_prime: int | None
    r_prime: int | None
    factor: int | None
    probability: float | None = None
    r_tried: int | None = None

    @property
    def success(self) -> bool:
        return self.factor is not None


def convergents(c: int, N: int):
    """Continued-fraction convergents ``(p, q)`` of ``c / N``."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    num, den = c, N
    while den:
        a = num // den
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1
        num, den = den, num - a * den


def best_approximation(c: int, N: int, bound: int):
    """Closest ``d/r`` to ``c/N`` with ``r < bound``, in lowest terms, as ``(d, r)``.

    Walks the convergents while their denominators stay below ``bound`` and
    compares the last one with the final semiconvergent on the other side;
    ties go to the smaller denominator.  Returns None unless the winner is
    strictly within ``1/(2N)`` of ``c/N``.
    """
    if not 0 <= c < N:
        raise ArgumentError(f"c={c} outside [0, {N})")
    if bound < 1:
        raise ArgumentError("bound must be at least 1")
    max_den = bound - 1
    if max_den < 1:
        return None
    p0, q0, p1, q1 = 0, 1, 1, 0
    num, den = c, N
    exact = False
    while True:
        a = num // den
        q2 = q0 + a * q1
        if q2 > max_den:
            break
        p0, q0, p1, q1 = p1, q1, p0 + a * p1, q2
        num, den = den, num - a * den
        if den == 0:
            exact = True
            break
    if exact:
        best = (p1, q1)
    else:
        k = (max_den - q0) // q1
        semi = (p0 + k * p1, q0 + k * q1)
        # |c/N - p/q| compared as |cq - pN| / q, cross-multiplied
        def dist_key(pq):
            p, q = pq
            return (abs(c * q - p * N), q)
        e1, e2 = dist_key(semi), dist_key((p1, q1))
        if e1[0] * q1 < e2[0] * semi[1] or (e1[0] * q1 == e2[0] * semi[1] and semi[1] < q1):
            best = semi
        else:
            best = (p1, q1)
    d, r = best
    gcd = math.gcd(d, r)
    d, r = d // gcd, r // gcd
    if 2 * abs(c * r - d * N) < r:
        return d, r
    return None


def _decode(t: int, M: int, c: int, N: int):
    approx = best_approximation(c, N, M)
    if approx is None:
        return None, None, None
    d, r = approx
    return d, r, classical_postprocess(t, r, M)


def quantum_period_run(params: ShorParams, rng=None, *,
                       max_qubits: int = DEFAULT_MAX_QUBITS) -> ShorOutcome:
    """One simulated run: prepare, permute, transform, measure, then decode ``c``."""
    state = period_finding_state(params, max_qubits=max_qubits)
    outcome = state.measure(as_rng(rng))
    c, res = decode_measurement(outcome.basis_index, params.n)
    d, r, f = _decode(params.t, params.M, c, params.N)
    return ShorOutcome(params.t, c, res, d, r, f, outcome.probability)


def outcome_probabilities(params: ShorParams) -> np.ndarray:
    """Array ``P[c, m]`` of observing ``|c, m>``, summed directly over ``a``.

    ``P[c, t**k mod M] = |(1/N) sum_{a : t**a = t**k} exp(2 pi i a c / N)|**2``.
    """
    if params.t is None:
        raise ArgumentError("params carry no base t")
    N, M = params.N, params.M
    res = residues(params.t, M, N)
    c = np.arange(N, dtype=np.int64)
    roots = np.exp(2j * np.pi * c / N)
    probs = np.zeros((N, M))
    for m in np.unique(res):
        a = np.flatnonzero(res == m).astype(np.int64)
        amp = roots[np.outer(a, c) % N].sum(axis=0) / N
        probs[:, m] = amp.real ** 2 + amp.imag ** 2
    return probs


def peak_distribution(params: ShorParams, tol: float = 1e-12) -> dict:
    """``{(c, residue): probability}`` for every outcome with probability above ``tol``."""
    probs = outcome_probabilities(params)
    cs, ms = np.nonzero(probs > tol)
    return {(int(c), int(m)): float(probs[c, m]) for c, m in zip(cs, ms)}


def is_good(c: int, r: int, N: int) -> bool:
    """True when ``r c = l (mod N)`` for some integer ``|l| <= r/2``."""
    l = (r * c) % N
    if l > N // 2:
        l -= N
    return 2 * abs(l) <= r


def decoded_denominator(c: int, params: ShorParams):
    approx = best_approximation(c, params.N, params.M)
    return None if approx is None else approx[1]


def very_good_count(params: ShorParams, tol: float = 1e-12) -> int:
    """Number of observable ``(c, residue)`` pairs whose ``c`` decodes to the true order."""
    r = order_classical(params.t, params.M)
    dist = peak_distribution(params, tol)
    return sum(1 for (c, _m) in dist if decoded_denominator(c, params) == r)


def run_success_probability(params: ShorParams) -> float:
    """Exact chance that one run yields a proper divisor."""
    probs = outcome_probabilities(params).sum(axis=1)
    return float(sum(p for c, p in enumerate(probs)
                     if p > 0 and _decode(params.t, params.M, c, params.N)[2] is not None))


@dataclass
class FactorConfig:
    t: int | None = None
    max_runs_per_t: int | None = None
    max_t_draws: int | None = None
    try_multiples: bool = False
    order_finder: str = "quantum"
    max_qubits: int = DEFAULT_MAX_QUBITS


@dataclass
class FactorReport:
    M: int
    factor: int | None
    seed: int | None
    n: int
    runs: list = field(default_factory=list)

    @property
    def cofactor(self):
        return None if self.factor is None else self.M // self.factor

    @property
    def runs_used(self) -> int:
        return len(self.runs)

    @property
    def success(self) -> bool:
        return self.factor is not None

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "factor": self.factor,
            "cofactor": self.cofactor,
            "n": self.n,
            "runs": [{"t": o.t, "c": o.c, "residue": o.residue, "r_prime": o.r_prime,
                      "success": o.success} for o in self.runs],
            "seed": self.seed,
        }


def draw_base(M: int, rng) -> int:
    """Uniform ``t`` in ``(1, M)`` with ``gcd(t, M) = 1``."""
    choices = [t for t in range(2, M) if math.gcd(t, M) == 1]
    return choices[int(rng.integers(len(choices)))]


def retry_multiples(outcome: ShorOutcome, M: int) -> ShorOutcome:
    if outcome.factor is not None or outcome.r_prime is None:
        return outcome
    for lam in range(2, 5):
        r = lam * outcome.r_prime
        if r > M:
            break
        f = classical_postprocess(outcome.t, r, M)
        if f is not None:
            return replace(outcome, factor=f, r_tried=r)
    return outcome


def factor(M: int, config: FactorConfig | None = None, rng=None) -> FactorReport:
    """Repeat period-finding runs until a proper divisor of ``M`` turns up.

    Each base ``t`` gets ``max_runs_per_t`` runs before a new one is drawn, for
    at most ``max_t_draws`` bases.  Exhausting the budget returns a report
    with ``factor=None``.  ``order_finder="classical"`` swaps the quantum run
    for ``order_classical``, which is useful as a cross-check.
    """
    config = config or FactorConfig()
    params = choose_params(M, max_runs_per_t=config.max_runs_per_t, max_t_draws=config.max_t_draws)
    if config.order_finder not in ("quantum", "classical"):
        raise ArgumentError(f"unknown order finder {config.order_finder!r}")
    if config.order_finder == "quantum" and params.n_qubits > config.max_qubits:
        raise CapacityError(f"M={M} needs {params.n_qubits} qubits, cap is {config.max_qubits}")
    seed = rng if isinstance(rng, (int, np.integer)) else None
    rng = as_rng(rng)
    report = FactorReport(M, None, None if seed is None else int(seed), params.n)
    for _ in range(params.max_t_draws):
        t = config.t if config.t is not None else draw_base(M, rng)
        run_params = params.with_t(t)
        for _ in range(params.max_runs_per_t):
            if config.order_finder == "quantum":
                outcome = quantum_period_run(run_params, rng, max_qubits=config.max_qubits)
            else:
                r = order_classical(t, M)
                outcome = ShorOutcome(t, None, None, None, r, classical_postprocess(t, r, M))
            if config.try_multiples:
                outcome = retry_multiples(outcome, M)
            report.runs.append(outcome)
            logger.debug("t=%d c=%s r'=%s factor=%s", t, outcome.c, outcome.r_prime, outcome.factor)
            if outcome.factor is not None:
                report.factor = outcome.factor
                return report
    return report
