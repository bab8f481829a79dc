"""#SAT of a boolean netlist, counted through a circuit amplitude.

The netlist is compiled to reversible logic (compute, copy the result out,
uncompute), embedded in a core-gate circuit whose <0|.|0> amplitude equals
gap(g)/2^n for the netlist function g, and the model count is read off as
(2^n - gap)/2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .circuit import CCX, CNOT, Circuit, Gate, H, X, lower, simplify_hh
from .compiler import GapEngine, amplitude_00
from .errors import ParseError, ShapeError

_INPUT_RE = re.compile(r"^x([1-9][0-9]*)$")
_BOOL_OPS = {"AND": 2, "OR": 2, "XOR": 2, "NOT": 1}


@dataclass(frozen=True)
class BoolGate:
    name: str
    op: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class BoolCircuit:
    """Single-output combinational netlist over AND/OR/XOR/NOT."""

    n_inputs: int
    gates: tuple[BoolGate, ...]
    output: str

    def __post_init__(self):
        if self.n_inputs < 1:
            raise ShapeError("need at least one input")
        defined: set[str] = set()
        for g in self.gates:
            if g.op not in _BOOL_OPS or len(g.args) != _BOOL_OPS[g.op]:
                raise ShapeError(f"bad gate {g.name}: {g.op} {g.args}")
            if _INPUT_RE.match(g.name) or g.name in defined:
                raise ShapeError(f"bad or duplicate gate id {g.name!r}")
            for a in g.args:
                self._check_ref(a, defined)
            defined.add(g.name)
        self._check_ref(self.output, defined)

    def _check_ref(self, ref: str, defined: set[str]) -> None:
        m = _INPUT_RE.match(ref)
        if m:
            if not 1 <= int(m.group(1)) <= self.n_inputs:
                raise ShapeError(f"input {ref} out of range")
        elif ref not in defined:
            raise ShapeError(f"undefined operand {ref!r}")

    def evaluate(self, x: Sequence[int]) -> int:
        """Truth-table oracle: evaluate the netlist on an input bit vector."""
        if len(x) != self.n_inputs:
            raise ShapeError(f"expected {self.n_inputs} bits, got {len(x)}")
        vals = {f"x{i + 1}": x[i] & 1 for i in range(self.n_inputs)}
        for g in self.gates:
            a = vals[g.args[0]]
            if g.op == "NOT":
                vals[g.name] = a ^ 1
            else:
                b = vals[g.args[1]]
                if g.op == "AND":
                    vals[g.name] = a & b
                elif g.op == "OR":
                    vals[g.name] = a | b
                else:
                    vals[g.name] = a ^ b
        return vals[self.output]

    def count_by_enumeration(self) -> int:
        """Reference count over the full input cube."""
        n = self.n_inputs
        return sum(
            self.evaluate([(m >> i) & 1 for i in range(n)]) for m in range(1 << n)
        )


def parse_netlist(text: str) -> BoolCircuit:
    n_inputs = None
    gates: list[BoolGate] = []
    output = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n_inputs is None:
            if len(parts) != 2 or parts[0] != "inputs":
                raise ParseError("expected header 'inputs <n>'", lineno)
            try:
                n_inputs = int(parts[1])
            except ValueError:
                raise ParseError(f"bad input count {parts[1]!r}", lineno) from None
            if n_inputs < 1:
                raise ParseError("input count must be positive", lineno)
            continue
        if parts[0] == "output":
            if output is not None:
                raise ParseError("duplicate output line", lineno)
            if len(parts) != 2:
                raise ParseError("expected 'output <id>'", lineno)
            output = parts[1]
            continue
        if len(parts) < 2 or parts[1] != "=":
            raise ParseError(f"expected '<id> = OP <args>', got {line!r}", lineno)
        name, op, args = parts[0], parts[2] if len(parts) > 2 else "", tuple(parts[3:])
        if op not in _BOOL_OPS:
            raise ParseError(f"unknown operation {op!r}", lineno)
        if len(args) != _BOOL_OPS[op]:
            raise ParseError(f"{op} takes {_BOOL_OPS[op]} operands", lineno)
        if len(set(args)) != len(args):
            raise ParseError(f"{op} operands must be distinct wires", lineno)
        gates.append(BoolGate(name, op, args))
    if n_inputs is None:
        raise ParseError("missing 'inputs <n>' header")
    if output is None:
        raise ParseError("missing 'output <id>' line")
    try:
        return BoolCircuit(n_inputs, tuple(gates), output)
    except ShapeError as exc:
        raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class ReversibleCircuit:
    """X/CNOT/CCX circuit mapping |x>|0>|0...> to |x>|g(x)>|0...>.

    Qubits 0..n_inputs-1 hold the input, qubit n_inputs is the output
    register, the rest are ancillas (restored by the uncompute block).
    """

    n_inputs: int
    n_ancillas: int
    gates: tuple[Gate, ...]

    @property
    def n_qubits(self) -> int:
        return self.n_inputs + 1 + self.n_ancillas


def to_reversible(b: BoolCircuit) -> ReversibleCircuit:
    """Compute / copy / uncompute synthesis over {X, CNOT, CCX}.

    AND, OR, XOR each write one fresh ancilla (OR by De Morgan: X-conjugate
    the operands around a CCX, then X the result). NOT costs nothing: it
    flips the wire's polarity, and the X gates materialize on consumers.
    """
    n = b.n_inputs
    out_reg = n
    next_anc = n + 1
    # wire -> (qubit, inverted)
    wires: dict[str, tuple[int, bool]] = {
        f"x{i + 1}": (i, False) for i in range(n)
    }
    compute: list[Gate] = []
    for g in b.gates:
        if g.op == "NOT":
            q, inv = wires[g.args[0]]
            wires[g.name] = (q, not inv)
            continue
        qa, ia = wires[g.args[0]]
        qb, ib = wires[g.args[1]]
        if qa == qb:
            # NOT chains can alias both operands to one qubit; the result is
            # then the wire itself or a constant, carried by a pristine
            # ancilla (|0> reads as 0, inverted polarity reads as 1).
            same = ia == ib
            if g.op == "AND":
                wires[g.name] = (qa, ia) if same else (next_anc, False)
            elif g.op == "OR":
                wires[g.name] = (qa, ia) if same else (next_anc, True)
            else:  # XOR
                wires[g.name] = (next_anc, not same)
            if wires[g.name][0] == next_anc:
                next_anc += 1
            continue
        anc = next_anc
        next_anc += 1
        if g.op == "XOR":
            compute += [CNOT(qa, anc), CNOT(qb, anc)]
            if ia ^ ib:
                compute.append(X(anc))
        else:
            # trigger condition: operand == 1 for AND, operand == 0 for OR
            want = g.op == "OR"
            flips = [q for q, inv in ((qa, ia), (qb, ib)) if inv != want]
            compute += [X(q) for q in flips]
            compute.append(CCX(qa, qb, anc))
            compute += [X(q) for q in flips]
            if want:
                compute.append(X(anc))
        wires[g.name] = (anc, False)
    out_q, out_inv = wires[b.output]
    copy: list[Gate] = [CNOT(out_q, out_reg)]
    if out_inv:
        copy.append(X(out_reg))
    gates = compute + copy + list(reversed(compute))
    return ReversibleCircuit(n, next_anc - (n + 1), tuple(gates))


def apply_reversible(rc: ReversibleCircuit, bits: Sequence[int]) -> list[int]:
    """Classical simulation of the X/CNOT/CCX gate list on a bit vector."""
    if len(bits) != rc.n_qubits:
        raise ShapeError(f"expected {rc.n_qubits} bits, got {len(bits)}")
    state = [b & 1 for b in bits]
    for g in rc.gates:
        if g.kind == "X":
            state[g.qubits[0]] ^= 1
        elif g.kind == "CNOT":
            c, t = g.qubits
            state[t] ^= state[c]
        elif g.kind == "CCX":
            a, b_, t = g.qubits
            state[t] ^= state[a] & state[b_]
        else:
            raise ShapeError(f"non-reversible gate {g.kind} in reversible circuit")
    return state


def assemble_counting_circuit(b: BoolCircuit) -> Circuit:
    """Internal part of the counting circuit, lowered and H-simplified.

    With the output register prepared in |-> (X then H), running the
    reversible block kicks the phase (-1)^g(x) onto a uniform superposition
    of inputs, so <0|.|0> of the assembled circuit is gap(g)/2^n. Explicit
    leading/trailing H columns make the stored gate list match this module's
    implicit-Hadamard circuit convention.
    """
    rc = to_reversible(b)
    total = rc.n_qubits
    out_reg = b.n_inputs
    io = list(range(b.n_inputs)) + [out_reg]
    col_all = [H(q) for q in range(total)]
    col_io = [H(q) for q in io]
    gates = (
        col_all
        + [X(out_reg)]
        + col_io
        + list(rc.gates)
        + col_io
        + [X(out_reg)]
        + col_all
    )
    return simplify_hh(lower(Circuit(total, tuple(gates))))


def count_sat(b: BoolCircuit, engine: GapEngine | None = None) -> int:
    """|{x : b(x) = 1}| computed exactly from the counting amplitude."""
    a = amplitude_00(assemble_counting_circuit(b), engine)
    n = b.n_inputs
    if a.g == 0:
        gap = 0
    else:
        if a.k % 2:
            raise RuntimeError("counting circuit must have an even H count")
        shift = n - a.k // 2
        if shift < 0:
            raise RuntimeError("amplitude inconsistent with an integer gap")
        gap = a.g << shift
    count2 = (1 << n) - gap
    assert count2 % 2 == 0
    return count2 // 2
