"""Shared fixtures, reference oracles, and hypothesis strategies."""

from __future__ import annotations

import itertools
import random

import numpy as np
from hypothesis import strategies as st

from f2gap import CCZ, CZ, Circuit, H, Poly, Z, parse_netlist
from f2gap.f2poly import indices_of


def slow_gap(f: Poly) -> int:
    """Independent gap oracle: plain Python loop over the whole cube."""
    total = 0
    for bits in itertools.product((0, 1), repeat=f.n_vars):
        total += -1 if f.evaluate(bits) else 1
    return total


def worked_example_circuit() -> Circuit:
    """3-qubit circuit whose polynomial, gap and amplitude are hand-checked:
    gap 16 over 7 variables, <0|C|0> = 1/2."""
    return Circuit(3, (H(0), H(2), CZ(0, 1), H(1), Z(2), CCZ(0, 1, 2), H(0)))


def worked_example_poly() -> Poly:
    return Poly.from_terms(
        7,
        [(1, 2), (2, 3), (4, 5), (6, 7), (2, 4), (2, 5, 7), (7,)],
    )


def star_circuit(n_qubits: int) -> Circuit:
    """CCZ from qubit 0 to every other pair: many non-Clifford gates, but the
    cubic terms all share qubit 0's variable (hitting set of size one)."""
    gates = [
        CCZ(0, a, b) for a, b in itertools.combinations(range(1, n_qubits), 2)
    ]
    return Circuit(n_qubits, tuple(gates))


def path_poly(n: int) -> Poly:
    return Poly.from_terms(n, [(i, i + 1) for i in range(1, n)])


def disjoint_pairs_poly(n: int) -> Poly:
    return Poly.from_terms(n, [(i, i + 1) for i in range(1, n, 2)])


def all_triples_poly(n: int) -> Poly:
    return Poly.from_terms(n, itertools.combinations(range(1, n + 1), 3))


def random_netlist(n_inputs: int, n_gates: int, seed: int):
    rng = random.Random(seed)
    wires = [f"x{i}" for i in range(1, n_inputs + 1)]
    lines = [f"inputs {n_inputs}"]
    for k in range(1, n_gates + 1):
        op = rng.choice(["AND", "OR", "XOR", "NOT"])
        if op == "NOT":
            lines.append(f"g{k} = NOT {rng.choice(wires)}")
        else:
            a, b = rng.sample(wires, 2)
            lines.append(f"g{k} = {op} {a} {b}")
        wires.append(f"g{k}")
    lines.append(f"output g{n_gates}")
    return parse_netlist("\n".join(lines))


def poly_isomorphic(f: Poly, g: Poly) -> bool:
    """Equality up to a variable bijection (backtracking with degree-profile
    pruning; intended for small fixture polynomials)."""
    if f.n_vars != g.n_vars or f.constant != g.constant:
        return False
    if sorted(map(len, f.monomials())) != sorted(map(len, g.monomials())):
        return False
    n = f.n_vars

    def profile(p: Poly, v: int) -> tuple[int, int, int]:
        counts = [0, 0, 0]
        for t in p.terms:
            if t & (1 << (v - 1)):
                counts[t.bit_count() - 1] += 1
        return tuple(counts)

    fp = {v: profile(f, v) for v in range(1, n + 1)}
    gp = {v: profile(g, v) for v in range(1, n + 1)}
    if sorted(fp.values()) != sorted(gp.values()):
        return False
    g_terms = g.terms
    mapping: dict[int, int] = {}
    used: set[int] = set()
    f_vars = sorted(range(1, n + 1), key=lambda v: fp[v], reverse=True)

    def consistent() -> bool:
        dom = set(mapping)
        for t in f.terms:
            idx = indices_of(t)
            if all(i in dom for i in idx):
                m = 0
                for i in idx:
                    m |= 1 << (mapping[i] - 1)
                if m not in g_terms:
                    return False
        return True

    def rec(k: int) -> bool:
        if k == len(f_vars):
            return True
        v = f_vars[k]
        for w in range(1, n + 1):
            if w in used or gp[w] != fp[v]:
                continue
            mapping[v] = w
            used.add(w)
            if consistent() and rec(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return rec(0)


def dense_unitary(c: Circuit) -> np.ndarray:
    """Full-circuit unitary by explicit matrix products (independent of the
    statevector kernels); qubit 0 is the most significant index bit."""
    h1 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    eye = np.eye(2)
    n = c.n_qubits
    dim = 1 << n

    def on(q: int, m: np.ndarray) -> np.ndarray:
        out = np.array([[1.0]])
        for i in range(n):
            out = np.kron(out, m if i == q else eye)
        return out

    def phase(qubits) -> np.ndarray:
        d = np.ones(dim)
        for idx in range(dim):
            if all((idx >> (n - 1 - q)) & 1 for q in qubits):
                d[idx] = -1.0
        return np.diag(d)

    col = np.array([[1.0]])
    for _ in range(n):
        col = np.kron(col, h1)
    u = col.copy()
    for g in c.gates:
        m = on(g.qubits[0], h1) if g.kind == "H" else phase(g.qubits)
        u = m @ u
    return col @ u


# -- hypothesis strategies ---------------------------------------------------


@st.composite
def polys(draw, max_n: int = 10, max_degree: int = 3, allow_constant: bool = True):
    n = draw(st.integers(1, max_n))
    candidates = [
        sum(1 << (i - 1) for i in combo)
        for d in range(1, max_degree + 1)
        for combo in itertools.combinations(range(1, n + 1), d)
    ]
    terms = draw(st.frozensets(st.sampled_from(candidates)))
    const = draw(st.integers(0, 1)) if allow_constant else 0
    return Poly(n, terms, const)


@st.composite
def circuits(draw, max_qubits: int = 5, max_gates: int = 12):
    n = draw(st.integers(1, max_qubits))
    kinds = [k for k, a in (("H", 1), ("Z", 1), ("CZ", 2), ("CCZ", 3)) if a <= n]
    n_gates = draw(st.integers(0, max_gates))
    gates = []
    for _ in range(n_gates):
        kind = draw(st.sampled_from(kinds))
        arity = {"H": 1, "Z": 1, "CZ": 2, "CCZ": 3}[kind]
        qubits = tuple(
            draw(st.permutations(range(n)).map(lambda p: p[:arity]))
        )
        from f2gap import Gate

        gates.append(Gate(kind, qubits))
    return Circuit(n, tuple(gates))
