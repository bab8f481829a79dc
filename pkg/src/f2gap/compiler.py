"""Lowering between core-gate circuits and degree-3 polynomials over F2.

Each wire of the internal circuit is split into segments at its H gates and
every segment gets a fresh variable; a phase gate contributes the monomial of
its segments. With h internal Hadamards on l qubits the polynomial has
n = h + l variables and

    <0| full(C) |0> = gap(f_C) / 2^(h/2 + l),

an exact dyadic with a half-integer exponent. Arbitrary <x|C|y> amplitudes
add linear terms on the first/last segment of each wire.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ldexp
from typing import Callable, Sequence

from .circuit import CCZ, CZ, Circuit, Gate, Z, sandwich_measurement
from .errors import EngineError, ShapeError
from .f2poly import Poly, indices_of, mask_of

GapEngine = Callable[[Poly], int]


def _default_engine() -> GapEngine:
    from .gap import gap_auto

    return gap_auto


@dataclass(frozen=True)
class Amplitude:
    """Exact dyadic amplitude g / 2^(k/2), canonicalized so g is odd, zero,
    or k < 2. Unitarity forces g^2 <= 2^k."""

    g: int
    k: int

    def __post_init__(self):
        g, k = self.g, self.k
        if k < 0:
            raise ShapeError("exponent k must be nonnegative")
        if g == 0:
            k = 0
        else:
            while g % 2 == 0 and k >= 2:
                g //= 2
                k -= 2
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "k", k)
        if g * g > 1 << k:
            raise ShapeError(f"non-unitary amplitude {g}/2^({k}/2)")

    def to_float(self) -> float:
        v = ldexp(float(self.g), -(self.k // 2))
        if self.k % 2:
            v *= 2.0 ** -0.5
        return v

    def __float__(self) -> float:
        return self.to_float()

    def __str__(self) -> str:
        if self.k == 0:
            return str(self.g)
        if self.k % 2 == 0:
            return f"{self.g}/{1 << (self.k // 2)}"
        return f"{self.g}/2^({self.k}/2)"


@dataclass(frozen=True)
class CompiledPoly:
    """The polynomial of a circuit plus the segment bookkeeping.

    first_var[q] / last_var[q] are the variables of qubit q's leftmost and
    rightmost segments (equal exactly when the qubit has no H gate).
    """

    poly: Poly
    h: int
    n_qubits: int
    first_var: tuple[int, ...]
    last_var: tuple[int, ...]

    def __post_init__(self):
        if self.poly.n_vars != self.h + self.n_qubits:
            raise ShapeError("variable count must equal h + n_qubits")
        if self.poly.constant:
            raise ShapeError("compiled polynomials have no constant term")
        if len(self.first_var) != self.n_qubits or len(self.last_var) != self.n_qubits:
            raise ShapeError("need one first/last segment per qubit")


def circuit_to_poly(c: Circuit) -> CompiledPoly:
    """Compile the internal circuit into its polynomial.

    Segments are numbered by first use in gate-list order, then one variable
    per untouched qubit in qubit order.
    """
    c.require_core("circuit_to_poly")
    n_qubits = c.n_qubits
    cur = [0] * n_qubits
    first = [0] * n_qubits
    terms: set[int] = set()
    next_var = 1

    def touch(q: int) -> int:
        nonlocal next_var
        if cur[q] == 0:
            cur[q] = next_var
            first[q] = next_var
            next_var += 1
        return cur[q]

    h = 0
    for g in c.gates:
        if g.kind == "H":
            h += 1
            q = g.qubits[0]
            left = touch(q)
            right = next_var
            next_var += 1
            cur[q] = right
            terms.symmetric_difference_update({mask_of((left, right))})
        else:
            mono = mask_of(touch(q) for q in g.qubits)
            terms.symmetric_difference_update({mono})
    for q in range(n_qubits):
        if cur[q] == 0:
            touch(q)
    n = next_var - 1
    assert n == h + n_qubits
    return CompiledPoly(
        Poly(n, frozenset(terms), 0), h, n_qubits, tuple(first), tuple(cur)
    )


def poly_to_circuit(f: Poly) -> tuple[Circuit, int]:
    """An H-free circuit on n_vars qubits with one phase gate per monomial.

    Qubit i-1 carries variable x_i. The gate set cannot express a global
    sign, so a constant term is returned out of band as sign = (-1)^constant.
    """
    if f.degree() > 3:
        raise EngineError("only degree <= 3 polynomials have circuits")
    if f.n_vars < 1:
        raise ShapeError("need at least one variable")
    gates: list[Gate] = []
    order = sorted(f.terms, key=lambda t: (-t.bit_count(), indices_of(t)))
    for t in order:
        qubits = tuple(i - 1 for i in indices_of(t))
        if len(qubits) == 1:
            gates.append(Z(qubits[0]))
        elif len(qubits) == 2:
            gates.append(CZ(*qubits))
        else:
            gates.append(CCZ(*qubits))
    sign = -1 if f.constant else 1
    return Circuit(f.n_vars, tuple(gates)), sign


def amplitude_00(c: Circuit, engine: GapEngine | None = None) -> Amplitude:
    """Exact <0| full(c) |0> as a canonical dyadic."""
    engine = engine or _default_engine()
    cp = circuit_to_poly(c)
    g = engine(cp.poly)
    return Amplitude(g, cp.h + 2 * c.n_qubits)


def amplitude(
    c: Circuit,
    y: Sequence[int],
    x: Sequence[int],
    engine: GapEngine | None = None,
) -> Amplitude:
    """Exact <x| full(c) |y>.

    Input bits toggle a linear term on the first segment of their wire and
    output bits on the last segment; on a wire with no H gate the two
    coincide and x_i = y_i = 1 cancels out.
    """
    if len(y) != c.n_qubits or len(x) != c.n_qubits:
        raise ShapeError(f"x and y must have {c.n_qubits} bits")
    engine = engine or _default_engine()
    cp = circuit_to_poly(c)
    terms = set(cp.poly.terms)
    for q in range(c.n_qubits):
        if y[q] & 1:
            terms.symmetric_difference_update({mask_of((cp.first_var[q],))})
        if x[q] & 1:
            terms.symmetric_difference_update({mask_of((cp.last_var[q],))})
    g = engine(Poly(cp.poly.n_vars, frozenset(terms), 0))
    return Amplitude(g, cp.h + 2 * c.n_qubits)


def meas_prob_first_qubit(
    c: Circuit, engine: GapEngine | None = None
) -> Fraction:
    """Exact P(first qubit = 1) after running full(c) on |0...0>.

    The sandwiched circuit doubles every H, so its amplitude is an exact
    dyadic rational and the probability has a power-of-two denominator.
    """
    a = amplitude_00(sandwich_measurement(c), engine)
    if a.k % 2:
        raise RuntimeError("sandwiched circuit must have an even H count")
    half = 1 << (a.k // 2)
    p = Fraction(half - a.g, 2 * half)
    assert 0 <= p <= 1
    return p


def format_compiled(cp: CompiledPoly) -> str:
    """Machine-parsable report: header comments plus the polynomial text."""
    from .f2poly import format_poly

    lines = [f"# h={cp.h} l={cp.n_qubits} n={cp.poly.n_vars}"]
    for q in range(cp.n_qubits):
        lines.append(f"# first_var q{q}=x{cp.first_var[q]}")
    for q in range(cp.n_qubits):
        lines.append(f"# last_var q{q}=x{cp.last_var[q]}")
    return "\n".join(lines) + "\n" + format_poly(cp.poly)
