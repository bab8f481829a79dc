"""Command-line front end.

Every subcommand prints machine-parsable key=value lines and is byte-for-byte
deterministic for identical inputs, flags, and seeds. Exact values print in
exact form (integer, num/den, or g/2^(k/2)); floats are a secondary view.

Exit codes: 0 success, 1 usage, 2 parse error, 3 resource budget exceeded,
4 inconclusive analysis.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import circuit as circ_mod
from . import compiler, f2poly, gap, oracle, satcount, width
from .errors import BudgetError, F2GapError, InconclusiveError, ParseError

_ENGINES = ("auto", "brute", "quadratic", "hitting", "minimize")


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default 2 is reserved for parse errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _gap_engine(name: str, budget: int, enum_limit: int):
    if name == "auto":
        return lambda f: gap.gap_auto(f, budget_log2=budget)
    if name == "brute":
        return lambda f: f2poly.gap_bruteforce(f, limit=min(budget, f2poly.BRUTE_FORCE_LIMIT))
    if name == "quadratic":
        return gap.gap_quadratic
    if name == "hitting":
        return lambda f: gap.gap_hitting(f, gap.find_hitting_set(f), budget_log2=budget)
    return lambda f: gap.gap_via_minimization(f, enum_limit=enum_limit, budget_log2=budget)


def _parse_bits(text: str, n: int, flag: str) -> list[int]:
    if len(text) != n or any(ch not in "01" for ch in text):
        raise ParseError(f"{flag} must be {n} bits of 0/1, got {text!r}")
    return [int(ch) for ch in text]


def _parse_matrix(text: str) -> f2poly.LinMap:
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError("expected header 'dim <n>'", lineno)
            n = int(parts[1])
            continue
        bits = line.replace(" ", "")
        if len(bits) != n or any(ch not in "01" for ch in bits):
            raise ParseError(f"expected {n} bits per row", lineno)
        rows.append(sum(1 << j for j, ch in enumerate(bits) if ch == "1"))
    if n is None or len(rows) != n:
        raise ParseError("matrix must have exactly 'dim' rows")
    return f2poly.LinMap.from_rows(rows, n)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=gap.DEFAULT_BUDGET_LOG2,
                        metavar="LOG2", help="log2 of the evaluation budget (default 30)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker hint; never affects output")

    p = _Parser(prog="f2gap", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("compile", parents=[common],
                        help="circuit file -> polynomial report")
    sp.add_argument("input")

    sp = sub.add_parser("gap", parents=[common], help="exact gap of a polynomial")
    sp.add_argument("input")
    sp.add_argument("--engine", choices=_ENGINES, default="auto")
    sp.add_argument("--enum-limit", type=int, default=gap.DEFAULT_ENUM_LIMIT)

    sp = sub.add_parser("estimate", parents=[common],
                        help="Monte Carlo estimate of gap/2^n")
    sp.add_argument("input")
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--seed", type=int, required=True)

    sp = sub.add_parser("amp", parents=[common], help="exact amplitude <x|C|y>")
    sp.add_argument("input")
    sp.add_argument("--x", default=None, help="output bits (default all zero)")
    sp.add_argument("--y", default=None, help="input bits (default all zero)")
    sp.add_argument("--engine", choices=_ENGINES, default="auto")
    sp.add_argument("--enum-limit", type=int, default=gap.DEFAULT_ENUM_LIMIT)
    sp.add_argument("--oracle", action="store_true",
                    help="also print the statevector value")

    sp = sub.add_parser("prob", parents=[common],
                        help="exact P(first qubit = 1) for a circuit")
    sp.add_argument("input")
    sp.add_argument("--engine", choices=_ENGINES, default="auto")
    sp.add_argument("--enum-limit", type=int, default=gap.DEFAULT_ENUM_LIMIT)
    sp.add_argument("--oracle", action="store_true")

    sp = sub.add_parser("satcount", parents=[common],
                        help="count satisfying assignments of a netlist")
    sp.add_argument("input")
    sp.add_argument("--engine", choices=_ENGINES, default="auto")
    sp.add_argument("--enum-limit", type=int, default=gap.DEFAULT_ENUM_LIMIT)

    sp = sub.add_parser("width", parents=[common],
                        help="width bounds for a polynomial")
    sp.add_argument("input")
    sp.add_argument("--exact-limit", type=int, default=width.DEFAULT_EXACT_VERTICES)
    sp.add_argument("--emit-circuit", metavar="PATH", default=None)

    sp = sub.add_parser("transform", parents=[common],
                        help="apply a rewrite and print the result")
    sp.add_argument("input")
    sp.add_argument("--op", required=True,
                    choices=("3terms", "simplify", "lower", "linmap", "minimize"))
    sp.add_argument("--matrix", metavar="PATH", default=None,
                    help="matrix file for --op linmap")
    sp.add_argument("--enum-limit", type=int, default=gap.DEFAULT_ENUM_LIMIT)

    sp = sub.add_parser("random", parents=[common],
                        help="generate a random polynomial or circuit")
    sp.add_argument("kind", choices=("poly", "circuit"))
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--vars", type=int, default=8, help="poly: variable count")
    sp.add_argument("--degree", type=int, default=3, help="poly: max degree")
    sp.add_argument("--qubits", type=int, default=4, help="circuit: qubit count")
    sp.add_argument("--gates", type=int, default=12, help="circuit: gate count")
    return p


def _run(args) -> None:
    out = sys.stdout
    if args.cmd == "compile":
        c = circ_mod.parse_circuit(_read_input(args.input))
        out.write(compiler.format_compiled(compiler.circuit_to_poly(c)))
    elif args.cmd == "gap":
        f = f2poly.parse_poly(_read_input(args.input))
        engine = _gap_engine(args.engine, args.budget, args.enum_limit)
        out.write(f"gap={engine(f)}\n")
    elif args.cmd == "estimate":
        f = f2poly.parse_poly(_read_input(args.input))
        est = gap.gap_monte_carlo(f, args.eps, args.delta, args.seed)
        out.write(f"estimate={est.normalized_estimate!r} samples={est.samples}\n")
    elif args.cmd == "amp":
        c = circ_mod.parse_circuit(_read_input(args.input))
        y = _parse_bits(args.y, c.n_qubits, "--y") if args.y else [0] * c.n_qubits
        x = _parse_bits(args.x, c.n_qubits, "--x") if args.x else [0] * c.n_qubits
        engine = _gap_engine(args.engine, args.budget, args.enum_limit)
        a = compiler.amplitude(c, y, x, engine)
        out.write(f"amp={a} float={a.to_float()!r}\n")
        if args.oracle:
            out.write(f"oracle={oracle.statevector_amplitude(c, y, x)!r}\n")
    elif args.cmd == "prob":
        c = circ_mod.parse_circuit(_read_input(args.input))
        engine = _gap_engine(args.engine, args.budget, args.enum_limit)
        p = compiler.meas_prob_first_qubit(c, engine)
        out.write(f"prob={p.numerator}/{p.denominator} float={float(p)!r}\n")
        if args.oracle:
            out.write(f"oracle={oracle.statevector_prob_first_qubit(c)!r}\n")
    elif args.cmd == "satcount":
        b = satcount.parse_netlist(_read_input(args.input))
        engine = _gap_engine(args.engine, args.budget, args.enum_limit)
        out.write(f"count={satcount.count_sat(b, engine)}\n")
    elif args.cmd == "width":
        f = f2poly.parse_poly(_read_input(args.input))
        rep = width.width_report(f, exact_limit=args.exact_limit)
        lower = "unknown" if rep.lower_bound is None else str(rep.lower_bound)
        flavour = "exact" if rep.chromatic_exact else "greedy"
        out.write(
            f"lower={lower} upper={rep.upper_bound} chromatic={rep.chromatic}({flavour})\n"
        )
        if args.emit_circuit:
            Path(args.emit_circuit).write_text(
                circ_mod.serialize_circuit(rep.witness)
            )
    elif args.cmd == "transform":
        text = _read_input(args.input)
        if args.op in ("3terms", "simplify", "lower"):
            c = circ_mod.parse_circuit(text)
            fn = {
                "3terms": circ_mod.insert_h_pairs,
                "simplify": circ_mod.simplify_hh,
                "lower": circ_mod.lower,
            }[args.op]
            out.write(circ_mod.serialize_circuit(fn(c)))
        elif args.op == "linmap":
            if not args.matrix:
                raise ParseError("--op linmap requires --matrix <file>")
            f = f2poly.parse_poly(text)
            L = _parse_matrix(_read_input(args.matrix))
            out.write(f2poly.format_poly(f2poly.apply_linear(f, L)))
        else:  # minimize
            f = f2poly.parse_poly(text)
            res = gap.invariance_space(f, enum_limit=args.enum_limit)
            fl = f2poly.apply_linear(f, res.L)
            out.write(
                f"# essential={res.essential_count}"
                f" invariance_dim={res.invariance_dim}"
                f" anti_invariant={int(res.anti_invariant_found)}\n"
            )
            out.write(f2poly.format_poly(fl))
    else:  # random
        if args.kind == "poly":
            f = f2poly.random_poly(args.vars, args.degree, args.seed)
            out.write(f2poly.format_poly(f))
        else:
            c = circ_mod.random_circuit(args.qubits, args.gates, args.seed)
            out.write(circ_mod.serialize_circuit(c))


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _run(args)
    except ParseError as exc:
        print(f"f2gap: parse error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"f2gap: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InconclusiveError as exc:
        print(f"f2gap: inconclusive: {exc}", file=sys.stderr)
        return 4
    except (F2GapError, OSError, ValueError) as exc:
        print(f"f2gap: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
