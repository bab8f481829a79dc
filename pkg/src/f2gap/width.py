"""Bounds on the minimal qubit count over all circuits compiling to a
polynomial.

Lower bound: a circuit on l qubits properly 2l-colours the hypergraph whose
hyperedges are the degree >= 2 monomials (two colours per wire, alternating
per segment), so ceil(chi/2) <= width. Upper bound: an explicitly built
witness circuit that reuses qubits by chaining variables along degree-2
monomials realized as internal H gates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .circuit import CCZ, CZ, Circuit, Gate, H, Z
from .compiler import circuit_to_poly, poly_to_circuit
from .errors import ShapeError
from .f2poly import Poly, bit_positions, indices_of

DEFAULT_EXACT_VERTICES = 16


@dataclass(frozen=True)
class Hypergraph:
    """Vertices 1..n_vertices; each hyperedge a vertex-set mask of size 2-3."""

    n_vertices: int
    edges: frozenset[int]

    def __post_init__(self):
        full = (1 << self.n_vertices) - 1
        for e in self.edges:
            if e & ~full or not 2 <= e.bit_count() <= 3:
                raise ShapeError("hyperedges need 2 or 3 in-range vertices")


@dataclass(frozen=True)
class WidthReport:
    """lower_bound is ceil(chromatic/2) when the chromatic number is exact,
    and None when only the greedy upper estimate of chi is available."""

    lower_bound: int | None
    chromatic: int
    chromatic_exact: bool
    upper_bound: int
    witness: Circuit

    def __post_init__(self):
        if self.lower_bound is not None and self.lower_bound > self.upper_bound:
            raise ShapeError("bounds must bracket the width")


def build_hypergraph(f: Poly) -> Hypergraph:
    """One hyperedge per monomial of degree 2 or 3. Degree-1 monomials and
    the constant impose no layout constraint and contribute nothing."""
    if f.degree() > 3:
        raise ShapeError("degree <= 3 required")
    edges = frozenset(t for t in f.terms if t.bit_count() >= 2)
    return Hypergraph(f.n_vars, edges)


def _colouring_exists(g: Hypergraph, k: int, closing: list[list[int]]) -> bool:
    n = g.n_vertices
    colours = [-1] * n

    def rec(v: int, used: int) -> bool:
        if v == n:
            return True
        top = min(k, used + 1)
        for c in range(top):
            colours[v] = c
            ok = True
            for e in closing[v]:
                mono = True
                for b in bit_positions(e):
                    if colours[b] != c:
                        mono = False
                        break
                if mono:
                    ok = False
                    break
            if ok and rec(v + 1, max(used, c + 1)):
                return True
        colours[v] = -1
        return False

    return rec(0, 0)


def chromatic_number(
    g: Hypergraph, exact_limit: int = DEFAULT_EXACT_VERTICES
) -> tuple[int, bool]:
    """Smallest k such that no hyperedge is monochromatic.

    Exact backtracking up to exact_limit vertices (branching on the lowest
    uncoloured vertex, new colours introduced in order); greedy first-fit in
    descending-degree order above it, flagged inexact.
    """
    n = g.n_vertices
    if n == 0:
        return 0, True
    if not g.edges:
        return 1, True
    if n <= exact_limit:
        closing: list[list[int]] = [[] for _ in range(n)]
        for e in g.edges:
            closing[max(bit_positions(e))].append(e)
        for k in range(1, n + 1):
            if _colouring_exists(g, k, closing):
                return k, True
        raise RuntimeError("unreachable: n colours always suffice")
    degree = [0] * n
    incident: list[list[int]] = [[] for _ in range(n)]
    for e in g.edges:
        for b in bit_positions(e):
            degree[b] += 1
            incident[b].append(e)
    order = sorted(range(n), key=lambda v: (-degree[v], v))
    colours = [-1] * n
    used = 0
    for v in order:
        c = 0
        while True:
            bad = False
            for e in incident[v]:
                others = [colours[b] for b in bit_positions(e) if b != v]
                if all(o == c for o in others):
                    bad = True
                    break
            if not bad:
                break
            c += 1
        colours[v] = c
        used = max(used, c + 1)
    return used, False


# ---------------------------------------------------------------------------
# Witness construction.


def _merge_chains(f: Poly) -> tuple[list[list[int]], set[int]]:
    """Greedy path cover over degree-2 monomials.

    A degree-2 monomial becomes an H link only if both endpoints are chain
    ends and no other monomial would need variables from both chains alive
    at once (two variables on one wire can never be simultaneously live).
    """
    chain_of = {v: v for v in range(1, f.n_vars + 1)}
    chains: dict[int, list[int]] = {v: [v] for v in range(1, f.n_vars + 1)}
    masks: dict[int, int] = {v: 1 << (v - 1) for v in range(1, f.n_vars + 1)}
    consumed: set[int] = set()
    links = sorted(
        (t for t in f.terms if t.bit_count() == 2), key=indices_of
    )
    all_terms = f.terms
    for t in links:
        u, v = indices_of(t)
        cu, cv = chain_of[u], chain_of[v]
        if cu == cv:
            continue
        if u not in (chains[cu][0], chains[cu][-1]):
            continue
        if v not in (chains[cv][0], chains[cv][-1]):
            continue
        mu, mv = masks[cu], masks[cv]
        if any(T != t and T & mu and T & mv for T in all_terms):
            continue
        left = chains[cu] if chains[cu][-1] == u else chains[cu][::-1]
        right = chains[cv] if chains[cv][0] == v else chains[cv][::-1]
        merged = left + right
        chains[cu] = merged
        masks[cu] = mu | mv
        for w in right:
            chain_of[w] = cu
        del chains[cv], masks[cv]
        consumed.add(t)
    ordered = sorted(chains.values(), key=lambda ch: min(ch))
    return ordered, consumed


def _schedule(
    f: Poly, chains: list[list[int]], consumed: set[int]
) -> list[Gate] | None:
    """Topologically order H boundaries and the remaining monomial gates;
    None when the precedence constraints are cyclic."""
    place = {}
    for q, ch in enumerate(chains):
        for p, v in enumerate(ch):
            place[v] = (q, p)
    remaining = sorted(f.terms - consumed, key=indices_of)
    nodes: list[tuple] = []
    for q, ch in enumerate(chains):
        nodes += [("H", q, j) for j in range(1, len(ch))]
    nodes += [("T", t) for t in remaining]
    succ: dict[tuple, list[tuple]] = {nd: [] for nd in nodes}
    indeg = {nd: 0 for nd in nodes}

    def edge(a: tuple, b: tuple) -> None:
        succ[a].append(b)
        indeg[b] += 1

    for q, ch in enumerate(chains):
        for j in range(1, len(ch) - 1):
            edge(("H", q, j), ("H", q, j + 1))
    for t in remaining:
        spots = [place[v] for v in indices_of(t)]
        if len({q for q, _ in spots}) != len(spots):
            return None  # two variables of one monomial on the same wire
        for q, p in spots:
            if p >= 1:
                edge(("H", q, p), ("T", t))
            if p + 1 <= len(chains[q]) - 1:
                edge(("T", t), ("H", q, p + 1))
    ready = sorted(nd for nd in nodes if indeg[nd] == 0)
    out: list[Gate] = []
    emitted = 0
    while ready:
        nd = ready.pop(0)
        emitted += 1
        if nd[0] == "H":
            out.append(H(nd[1]))
        else:
            qubits = tuple(sorted(place[v][0] for v in indices_of(nd[1])))
            out.append(
                Z(*qubits) if len(qubits) == 1
                else CZ(*qubits) if len(qubits) == 2
                else CCZ(*qubits)
            )
        grew = False
        for nxt in succ[nd]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                ready.append(nxt)
                grew = True
        if grew:
            ready.sort()
    if emitted != len(nodes):
        return None  # cycle
    return out


def _replay_mapping(gates: list[Gate], chains: list[list[int]]) -> dict[int, int]:
    """Map compiled variable numbers back to the intended original variables
    by replaying the compiler's first-use numbering over the chain layout."""
    pos = [0] * len(chains)
    assigned = [False] * len(chains)
    mapping: dict[int, int] = {}
    next_var = 1

    def touch(q: int) -> None:
        nonlocal next_var
        if not assigned[q]:
            mapping[next_var] = chains[q][pos[q]]
            assigned[q] = True
            next_var += 1

    for g in gates:
        if g.kind == "H":
            q = g.qubits[0]
            touch(q)
            pos[q] += 1
            mapping[next_var] = chains[q][pos[q]]
            next_var += 1
        else:
            for q in g.qubits:
                touch(q)
    for q in range(len(chains)):
        touch(q)
    return mapping


def width_heuristic_circuit(f: Poly) -> Circuit:
    """A circuit compiling back to f (up to variable bijection), on as few
    qubits as the chaining heuristic manages; falls back to one variable per
    qubit whenever chaining or scheduling fails. Constant terms are the
    caller's business (they only flip the amplitude sign)."""
    if f.constant:
        raise ShapeError("strip the constant term first; it has no gate")
    if f.n_vars < 1:
        raise ShapeError("need at least one variable")
    chains, consumed = _merge_chains(f)
    gates = _schedule(f, chains, consumed)
    if gates is not None:
        candidate = Circuit(len(chains), tuple(gates))
        cp = circuit_to_poly(candidate)
        mapping = _replay_mapping(list(candidate.gates), chains)
        if cp.poly.renamed(mapping).terms == f.terms:
            return candidate
    fallback, _ = poly_to_circuit(f)
    cp = circuit_to_poly(fallback)
    mapping = {cp.first_var[q]: q + 1 for q in range(fallback.n_qubits)}
    assert cp.poly.renamed(mapping).terms == f.terms
    return fallback


def width_report(f: Poly, exact_limit: int = DEFAULT_EXACT_VERTICES) -> WidthReport:
    """Bracket the circuit width of f between ceil(chi/2) and a witness."""
    stripped = Poly(f.n_vars, f.terms, 0)
    chi, exact = chromatic_number(build_hypergraph(stripped), exact_limit)
    witness = width_heuristic_circuit(stripped)
    lower = ceil(chi / 2) if exact else None
    return WidthReport(lower, chi, exact, witness.n_qubits, witness)
