"""``qsim`` command line: factor, grover, qft, sat solve, compile.

Exit codes: 0 success, 1 usage or input error, 2 the algorithm ran but
failed (factoring budget exhausted, Grover missed on every run, contract
check failed).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from . import gates as g
from .boolean import SatInstance, parse_boolean_circuit, sat_brute_force
from .errors import QsimError
from .grover import grover_search
from .qft import qft_circuit, qft_circuit_bitrev
from .reversible import check_contract, compile_circuit, format_reversible, gate_count_bound
from .shor import FactorConfig, factor
from .statevector import DEFAULT_MAX_QUBITS, apply_circuit, basis_state

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2
CHECK_MAX_WIRES = 14
SEED_BITS = 63


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for algorithmic failure here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _emit(args, report: dict, text: str):
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _base_report(args, command: str) -> dict:
    return {"command": command, "version": __version__, "seed": args.seed}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run_factor(args) -> int:
    config = FactorConfig(t=args.t, max_runs_per_t=args.max_runs, max_t_draws=args.max_t_draws,
                          try_multiples=args.multiples,
                          order_finder="classical" if args.classical else "quantum",
                          max_qubits=args.max_qubits)
    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    rep = factor(args.m, config, rng)
    report = _base_report(args, "factor")
    body = rep.to_dict()
    body["seed"] = args.seed
    for run, outcome in zip(body["runs"], rep.runs):
        run["probability"] = None if outcome.probability is None else sig12(outcome.probability)
    report.update(body)
    if rep.success:
        text = f"{rep.M} = {rep.factor} x {rep.cofactor}  ({rep.runs_used} runs, seed {args.seed})"
    else:
        text = f"no factor of {rep.M} found in {rep.runs_used} runs (seed {args.seed})"
    _emit(args, report, text)
    return EXIT_OK if rep.success else EXIT_FAILED


def run_grover(args) -> int:
    children = np.random.SeedSequence(args.seed).spawn(args.runs)
    runs = [grover_search(args.n, args.target, np.random.default_rng(ss), max_qubits=args.max_qubits)[1]
            for ss in children]
    first = runs[0]
    report = _base_report(args, "grover")
    report.update({
        "n": args.n,
        "target": args.target,
        "iterations": first.iterations,
        "candidate": first.candidate,
        "success": first.success,
        "success_probability": sig12(first.success_probability),
        "trace": [sig12(p) for p in first.trace],
        "runs": [{"candidate": r.candidate, "success": r.success} for r in runs],
    })
    hits = sum(r.success for r in runs)
    lines = [f"candidate {first.candidate} after {first.iterations} iterations "
             f"(P(target) = {first.success_probability:.12g})"]
    if args.runs > 1:
        lines.append(f"{hits}/{args.runs} runs found the target")
    if args.trace:
        lines += [f"{k:4d} {p:.12g}" for k, p in enumerate(first.trace)]
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if hits else EXIT_FAILED


def run_qft(args) -> int:
    circuit = qft_circuit_bitrev(args.n) if args.bitrev else qft_circuit(args.n)
    state = apply_circuit(basis_state(args.n, args.input, max_qubits=args.max_qubits), circuit)
    report = _base_report(args, "qft")
    report.update({"n": args.n, "input": args.input, "bitrev": args.bitrev, "gate_count": len(circuit)})
    if args.dump_state:
        report["state"] = state.to_dict()
        text = "\n".join(f"{i} {float(a.real)!r} {float(a.imag)!r}" for i, a in enumerate(state.amplitudes))
    else:
        report["probabilities"] = [sig12(p) for p in state.probabilities()]
        text = g.format_circuit(list(circuit))
    _emit(args, report, text)
    return EXIT_OK


def run_sat(args) -> int:
    inst = SatInstance.from_json(_read(args.file))
    assignment = sat_brute_force(inst, max_vars=args.max_vars)
    report = _base_report(args, "sat solve")
    report.update({"m": inst.m, "clauses": inst.size, "satisfiable": assignment is not None,
                   "assignment": None if assignment is None else list(assignment)})
    if assignment is None:
        text = "UNSAT"
    else:
        text = " ".join(f"x{k}={b}" for k, b in enumerate(assignment, start=1))
    _emit(args, report, text)
    return EXIT_OK


def run_compile(args) -> int:
    bc = parse_boolean_circuit(_read(args.circuit))
    rc = compile_circuit(bc)
    circuit_text = format_reversible(rc)
    report = _base_report(args, "compile")
    report.update({"inputs": rc.n_inputs, "outputs": rc.n_outputs, "scratch": rc.n_scratch,
                   "wires": rc.n_wires, "gates": len(rc), "gate_bound": gate_count_bound(bc)})
    status = EXIT_OK
    lines = [circuit_text.rstrip("\n")]
    if args.check:
        if rc.n_wires > CHECK_MAX_WIRES:
            report["check"] = "skipped"
            lines.append(f"# check skipped: {rc.n_wires} wires > {CHECK_MAX_WIRES}")
        else:
            bad = check_contract(rc, bc)
            report["check"] = "fail" if bad else "pass"
            report["failures"] = len(bad)
            lines.append(f"# check {'FAILED on ' + str(len(bad)) + ' inputs' if bad else 'passed'}")
            status = EXIT_FAILED if bad else EXIT_OK
    report["circuit"] = circuit_text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(circuit_text)
    _emit(args, report, "\n".join(lines))
    return status


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="64-bit seed; drawn fresh and reported when omitted")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS)

    parser = _Parser(prog="qsim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factor", parents=[common], help="Shor factoring of an odd composite")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, default=None, help="fixed base instead of random draws")
    p.add_argument("--max-runs", type=int, default=None, help="runs per base")
    p.add_argument("--max-t-draws", type=int, default=None)
    p.add_argument("--multiples", action="store_true", help="also try 2r', 3r', 4r'")
    p.add_argument("--classical", action="store_true", help="classical order finding")
    p.set_defaults(func=run_factor)

    p = sub.add_parser("grover", parents=[common], help="single-target Grover search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=run_grover)

    p = sub.add_parser("qft", parents=[common], help="apply the QFT to a basis state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", type=int, default=0)
    p.add_argument("--bitrev", action="store_true", help="omit the final SWAPs")
    p.add_argument("--dump-state", action="store_true")
    p.set_defaults(func=run_qft)

    p = sub.add_parser("sat", help="SAT instances")
    sat_sub = p.add_subparsers(dest="sat_command", required=True, parser_class=_Parser)
    s = sat_sub.add_parser("solve", parents=[common], help="brute-force an instance file")
    s.add_argument("--file", required=True)
    s.add_argument("--max-vars", type=int, default=24)
    s.set_defaults(func=run_sat)

    p = sub.add_parser("compile", parents=[common], help="compile a Boolean circuit reversibly")
    p.add_argument("--circuit", required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=run_compile)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = int(np.random.SeedSequence().entropy % (1 << SEED_BITS))
    elif not 0 <= args.seed < 1 << 64:
        print("qsim: error: --seed must be in [0, 2**64)", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "runs", 1) < 1:
        print("qsim: error: --runs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (QsimError, ValueError) as exc:
        print(f"qsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qsim: error: {exc.strerror or exc}: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
