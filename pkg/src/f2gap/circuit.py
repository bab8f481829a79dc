"""Circuit IR over the {H, Z, CZ, CCZ} core set, plus X/CNOT/CCX extensions.

A stored circuit is always the *internal* part: the represented unitary is
H-column . gates . H-column, i.e. every circuit is implicitly sandwiched by
Hadamards on all qubits. Extended gates exist only in the IR and must be
lowered to core gates before compilation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .errors import EngineError, ParseError, ShapeError

GATE_ARITY = {"H": 1, "Z": 1, "CZ": 2, "CCZ": 3, "X": 1, "CNOT": 2, "CCX": 3}
CORE_KINDS = frozenset({"H", "Z", "CZ", "CCZ"})
EXTENDED_KINDS = frozenset({"X", "CNOT", "CCX"})


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_ARITY:
            raise ShapeError(f"unknown gate kind {self.kind!r}")
        if not isinstance(self.qubits, tuple):
            object.__setattr__(self, "qubits", tuple(self.qubits))
        if len(self.qubits) != GATE_ARITY[self.kind]:
            raise ShapeError(
                f"{self.kind} takes {GATE_ARITY[self.kind]} qubits, got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ShapeError(f"{self.kind} qubits must be distinct")
        if any(q < 0 for q in self.qubits):
            raise ShapeError("qubit indices must be nonnegative")

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.qubits)])


def H(q: int) -> Gate:
    return Gate("H", (q,))


def Z(q: int) -> Gate:
    return Gate("Z", (q,))


def CZ(a: int, b: int) -> Gate:
    return Gate("CZ", (a, b))


def CCZ(a: int, b: int, c: int) -> Gate:
    return Gate("CCZ", (a, b, c))


def X(q: int) -> Gate:
    return Gate("X", (q,))


def CNOT(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


def CCX(a: int, b: int, target: int) -> Gate:
    return Gate("CCX", (a, b, target))


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ShapeError("a circuit needs at least one qubit")
        if not isinstance(self.gates, tuple):
            object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ShapeError(
                    f"gate {g} references qubit >= n_qubits={self.n_qubits}"
                )

    def is_core(self) -> bool:
        return all(g.kind in CORE_KINDS for g in self.gates)

    def require_core(self, op: str) -> None:
        for g in self.gates:
            if g.kind not in CORE_KINDS:
                raise EngineError(
                    f"{op} requires core gates only; lower() the {g.kind} gate first"
                )

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)


# ---------------------------------------------------------------------------
# Text format: first line "qubits <l>", then one gate per line.


def parse_circuit(text: str) -> Circuit:
    n_qubits = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n_qubits is None:
            if len(parts) != 2 or parts[0] != "qubits":
                raise ParseError("expected header 'qubits <l>'", lineno)
            try:
                n_qubits = int(parts[1])
            except ValueError:
                raise ParseError(f"bad qubit count {parts[1]!r}", lineno) from None
            if n_qubits < 1:
                raise ParseError("qubit count must be positive", lineno)
            continue
        kind = parts[0]
        if kind not in GATE_ARITY:
            raise ParseError(f"unknown gate {kind!r}", lineno)
        if len(parts) - 1 != GATE_ARITY[kind]:
            raise ParseError(
                f"{kind} takes {GATE_ARITY[kind]} qubit indices", lineno
            )
        try:
            qubits = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise ParseError(f"bad qubit index in {line!r}", lineno) from None
        if len(set(qubits)) != len(qubits):
            raise ParseError(f"repeated qubit index in {line!r}", lineno)
        if any(q < 0 or q >= n_qubits for q in qubits):
            raise ParseError(f"qubit index out of range 0..{n_qubits - 1}", lineno)
        gates.append(Gate(kind, qubits))
    if n_qubits is None:
        raise ParseError("missing 'qubits <l>' header")
    return Circuit(n_qubits, tuple(gates))


def serialize_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n_qubits}"]
    lines += [str(g) for g in c.gates]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Gate-list rewrites. All of them preserve the represented unitary except
# dagger, which inverts it.


def lower(c: Circuit) -> Circuit:
    """Rewrite extended gates into core gates: X = HZH and Toffoli is a CCZ
    conjugated by Hadamards on the target."""
    gates: list[Gate] = []
    for g in c.gates:
        if g.kind in CORE_KINDS:
            gates.append(g)
        elif g.kind == "X":
            q = g.qubits[0]
            gates += [H(q), Z(q), H(q)]
        elif g.kind == "CNOT":
            ctrl, t = g.qubits
            gates += [H(t), CZ(ctrl, t), H(t)]
        else:  # CCX
            a, b, t = g.qubits
            gates += [H(t), CCZ(a, b, t), H(t)]
    return Circuit(c.n_qubits, tuple(gates))


def dagger(c: Circuit) -> Circuit:
    """Inverse circuit: core gates are self-inverse, so reverse the list."""
    c.require_core("dagger")
    return Circuit(c.n_qubits, tuple(reversed(c.gates)))


def _h_column(n_qubits: int) -> list[Gate]:
    return [H(q) for q in range(n_qubits)]


def sandwich_measurement(c: Circuit) -> Circuit:
    """Internal part of the circuit whose <0|.|0> amplitude equals
    P(first qubit = 0) - P(first qubit = 1) after running c on |0>.

    The represented unitary is full(c)^dag . Z_0 . full(c); unfolding the
    implicit Hadamard columns of both copies of c leaves explicit H columns
    around the middle Z.
    """
    c.require_core("sandwich_measurement")
    col = _h_column(c.n_qubits)
    gates = list(c.gates) + col + [Z(0)] + col + list(reversed(c.gates))
    return Circuit(c.n_qubits, tuple(gates))


def insert_h_pairs(c: Circuit) -> Circuit:
    """Insert two H gates on every qubit between each consecutive gate pair.

    H^2 = I, so the unitary is unchanged, but every wire segment is renamed
    between gates: each variable of the compiled polynomial ends up in at
    most 3 monomials.
    """
    c.require_core("insert_h_pairs")
    gates: list[Gate] = []
    for i, g in enumerate(c.gates):
        if i:
            for q in range(c.n_qubits):
                gates += [H(q), H(q)]
        gates.append(g)
    return Circuit(c.n_qubits, tuple(gates))


def simplify_hh(c: Circuit) -> Circuit:
    """Remove H-H pairs on the same qubit with no intervening gate touching
    that qubit, to a fixed point."""
    c.require_core("simplify_hh")
    kept: list[Gate | None] = []
    pending: dict[int, int] = {}
    for g in c.gates:
        if g.kind == "H":
            q = g.qubits[0]
            if q in pending:
                kept[pending.pop(q)] = None
            else:
                pending[q] = len(kept)
                kept.append(g)
        else:
            for q in g.qubits:
                pending.pop(q, None)
            kept.append(g)
    return Circuit(c.n_qubits, tuple(g for g in kept if g is not None))


def random_circuit(n_qubits: int, n_gates: int, seed: int) -> Circuit:
    """Uniform core gates with uniformly chosen distinct qubits."""
    if n_qubits < 1:
        raise ShapeError("need at least one qubit")
    rng = random.Random(seed)
    kinds = [k for k in ("H", "Z", "CZ", "CCZ") if GATE_ARITY[k] <= n_qubits]
    gates = []
    for _ in range(n_gates):
        kind = rng.choice(kinds)
        qubits = tuple(rng.sample(range(n_qubits), GATE_ARITY[kind]))
        gates.append(Gate(kind, qubits))
    return Circuit(n_qubits, tuple(gates))


def gates_of(kinds_and_qubits: Iterable[tuple[str, tuple[int, ...]]]) -> tuple[Gate, ...]:
    return tuple(Gate(k, q) for k, q in kinds_and_qubits)
