"""Multilinear polynomials over F2 in algebraic normal form, degree <= 3.

Monomials are stored as int bitmasks (bit i-1 set means variable x_i occurs),
collected in a frozenset so that construction XOR-cancels duplicates. The
brute-force cube enumeration in gap_bruteforce is the ground truth that every
other gap engine is tested against.

Also provides GF(2) linear algebra on int-bitset rows and the invertible
linear maps used for change of variables.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BudgetError, ParseError, ShapeError

BRUTE_FORCE_LIMIT = 30

# Largest cube enumerated as a single truth table; above this the cube is
# split on the last variable to bound memory.
_TABLE_LIMIT = 24


def _var_bit(i: int) -> int:
    return 1 << (i - 1)


def bit_positions(mask: int) -> list[int]:
    """0-based positions of the set bits of mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask for a set of 1-based variable indices."""
    m = 0
    for i in indices:
        m |= _var_bit(i)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based variable indices of a monomial mask."""
    return tuple(b + 1 for b in bit_positions(mask))


@dataclass(frozen=True)
class Poly:
    """A multilinear polynomial over F2 with at most cubic monomials.

    Variables are 1-based (x1 .. x_{n_vars}); a monomial is the bitmask of
    its variables. `constant` is the degree-0 coefficient.
    """

    n_vars: int
    terms: frozenset[int] = frozenset()
    constant: int = 0

    def __post_init__(self):
        if self.n_vars < 0:
            raise ShapeError("n_vars must be nonnegative")
        if self.constant not in (0, 1):
            raise ShapeError("constant must be 0 or 1")
        if not isinstance(self.terms, frozenset):
            object.__setattr__(self, "terms", frozenset(self.terms))
        full = (1 << self.n_vars) - 1
        for t in self.terms:
            if t == 0 or t & ~full:
                raise ShapeError(f"monomial {t:#x} out of range for n={self.n_vars}")
            if t.bit_count() > 3:
                raise ShapeError("monomials of degree > 3 are not supported")

    @classmethod
    def from_terms(
        cls,
        n_vars: int,
        monomials: Iterable[Iterable[int]] = (),
        constant: int = 0,
    ) -> "Poly":
        """Build a polynomial from index tuples, XOR-cancelling repeats."""
        acc: set[int] = set()
        for mono in monomials:
            m = mask_of(mono)
            acc.symmetric_difference_update({m})
        const = constant & 1
        if 0 in acc:
            acc.discard(0)
            const ^= 1
        return cls(n_vars, frozenset(acc), const)

    @classmethod
    def zero(cls, n_vars: int) -> "Poly":
        return cls(n_vars)

    def degree(self) -> int:
        return max((t.bit_count() for t in self.terms), default=0)

    def monomials(self) -> list[tuple[int, ...]]:
        """Monomials as sorted index tuples, ordered by (degree, indices)."""
        return sorted((indices_of(t) for t in self.terms), key=lambda s: (len(s), s))

    def support(self) -> int:
        """Bitmask of all variables occurring in some monomial."""
        m = 0
        for t in self.terms:
            m |= t
        return m

    def eval_mask(self, xmask: int) -> int:
        v = self.constant
        for t in self.terms:
            if xmask & t == t:
                v ^= 1
        return v

    def evaluate(self, x: Sequence[int]) -> int:
        """Evaluate at a point given as a bit sequence of length n_vars."""
        if len(x) != self.n_vars:
            raise ShapeError(f"expected {self.n_vars} bits, got {len(x)}")
        m = 0
        for i, b in enumerate(x):
            if b & 1:
                m |= 1 << i
        return self.eval_mask(m)

    def renamed(self, mapping: Mapping[int, int], n_vars: int | None = None) -> "Poly":
        """Apply a variable bijection {old index -> new index}."""
        n = self.n_vars if n_vars is None else n_vars
        out: set[int] = set()
        for t in self.terms:
            m = mask_of(mapping[i] for i in indices_of(t))
            out.symmetric_difference_update({m})
        return Poly(n, frozenset(out), self.constant)

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if other.n_vars != self.n_vars:
            raise ShapeError("cannot add polynomials with different n_vars")
        return Poly(
            self.n_vars,
            self.terms ^ other.terms,
            self.constant ^ other.constant,
        )

    def __str__(self) -> str:
        parts = ["*".join(f"x{i}" for i in mono) for mono in self.monomials()]
        if self.constant:
            parts.append("1")
        return " + ".join(parts) if parts else "0"


def _signed_table_gap(f: Poly) -> int:
    """gap over the full cube by truth-table enumeration (n_vars <= _TABLE_LIMIT)."""
    n = f.n_vars
    if n == 0:
        return -1 if f.constant else 1
    table = np.zeros([2] * n, dtype=np.uint8)
    for t in f.terms:
        idx = tuple(1 if (t >> axis) & 1 else slice(None) for axis in range(n))
        table[idx] ^= 1
    ones = int(table.sum())
    gap = (1 << n) - 2 * ones
    return -gap if f.constant else gap


def _brute(f: Poly) -> int:
    if f.n_vars <= _TABLE_LIMIT:
        return _signed_table_gap(f)
    i = f.n_vars
    return _brute(restrict_drop(f, i, 0)) + _brute(restrict_drop(f, i, 1))


def gap_bruteforce(f: Poly, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Exact gap(f) = #zeroes - #ones by enumerating the whole cube.

    This is the reference oracle; it refuses inputs above `limit` variables.
    """
    if f.n_vars > limit:
        raise BudgetError(
            f"brute force over {f.n_vars} variables exceeds the limit of {limit}"
        )
    return _brute(f)


def evaluate_batch(f: Poly, xmasks: "np.ndarray") -> "np.ndarray":
    """Vectorized evaluation at an array of point masks (n_vars <= 63)."""
    if f.n_vars > 63:
        raise ShapeError("batch evaluation supports at most 63 variables")
    acc = np.zeros(len(xmasks), dtype=bool)
    if f.constant:
        acc[:] = True
    masks = xmasks.astype(np.uint64)
    for t in f.terms:
        tt = np.uint64(t)
        acc ^= (masks & tt) == tt
    return acc


def restrict(f: Poly, i: int, b: int) -> Poly:
    """Fix x_i := b, keeping the ambient variable count (x_i becomes unused)."""
    if not 1 <= i <= f.n_vars:
        raise ShapeError(f"variable index {i} out of range 1..{f.n_vars}")
    bit = _var_bit(i)
    out: set[int] = set()
    const = f.constant
    for t in f.terms:
        if not t & bit:
            out.symmetric_difference_update({t})
        elif b & 1:
            rest = t ^ bit
            if rest == 0:
                const ^= 1
            else:
                out.symmetric_difference_update({rest})
    return Poly(f.n_vars, frozenset(out), const)


def _drop_index(mask: int, i: int) -> int:
    low = mask & (_var_bit(i) - 1)
    high = (mask >> i) << (i - 1)
    return low | high


def restrict_drop(f: Poly, i: int, b: int) -> Poly:
    """Fix x_i := b and drop the variable; indices above i shift down by one."""
    g = restrict(f, i, b)
    out = frozenset(_drop_index(t, i) for t in g.terms)
    return Poly(f.n_vars - 1, out, g.constant)


def restrict_many(f: Poly, assignment: Mapping[int, int]) -> Poly:
    """Fix several variables at once and drop them all."""
    fixed = mask_of(assignment)
    zeros = mask_of(i for i, b in assignment.items() if not b & 1)
    keep = [i for i in range(1, f.n_vars + 1) if not fixed & _var_bit(i)]
    new_pos = {old: new + 1 for new, old in enumerate(keep)}
    out: set[int] = set()
    const = f.constant
    for t in f.terms:
        if t & zeros:
            continue
        rest = t & ~fixed
        if rest == 0:
            const ^= 1
            continue
        m = mask_of(new_pos[i] for i in indices_of(rest))
        out.symmetric_difference_update({m})
    return Poly(len(keep), frozenset(out), const)


# ---------------------------------------------------------------------------
# GF(2) linear algebra on int-bitset rows.


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a bit-matrix given as int rows, by Gaussian elimination."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def gf2_reduce(rows: Iterable[int]) -> list[int]:
    """Row-reduce to a canonical basis (descending leading bits)."""
    basis: list[int] = []
    for r in rows:
        cur = r
        for b in basis:
            cur = min(cur, cur ^ b)
        if cur:
            basis.append(cur)
            basis.sort(reverse=True)
    # back-substitute for uniqueness
    for i, b in enumerate(basis):
        lead = 1 << (b.bit_length() - 1)
        for j in range(len(basis)):
            if j != i and basis[j] & lead:
                basis[j] ^= b
    basis.sort(reverse=True)
    return basis


def gf2_in_span(vec: int, basis: Iterable[int]) -> bool:
    for b in basis:
        vec = min(vec, vec ^ b)
    return vec == 0


def gf2_nullspace(rows: Sequence[int], n: int) -> list[int]:
    """Basis of {x in F2^n : row . x = 0 for every row}."""
    reduced = gf2_reduce(rows)
    pivots = [b.bit_length() - 1 for b in reduced]
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = 1 << free
        for b, p in zip(reduced, pivots):
            if b & (1 << free):
                v |= 1 << p
        basis.append(v)
    return basis


def gf2_extend_to_basis(vectors: Sequence[int], n: int) -> list[int]:
    """Unit vectors completing `vectors` to a basis of F2^n, ascending."""
    basis = gf2_reduce(vectors)
    comp = []
    for i in range(n):
        v = 1 << i
        if not gf2_in_span(v, basis):
            comp.append(v)
            basis = gf2_reduce(basis + [v])
    return comp


def _transpose(masks: Sequence[int], n: int) -> tuple[int, ...]:
    out = [0] * n
    for j, col in enumerate(masks):
        for i in bit_positions(col):
            out[i] |= 1 << j
    return tuple(out)


@dataclass(frozen=True)
class LinMap:
    """An invertible linear map on F2^n.

    `columns[j]` is the image of the basis vector e_{j+1}, as a bitmask over
    output coordinates, so apply(x) = XOR of columns selected by x.
    """

    n: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != self.n:
            raise ShapeError("need exactly n columns")
        full = (1 << self.n) - 1
        if any(c & ~full for c in self.columns):
            raise ShapeError("column entries out of range")
        if gf2_rank(self.columns) != self.n:
            raise ShapeError("matrix is singular over F2")

    @classmethod
    def identity(cls, n: int) -> "LinMap":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[int], n: int | None = None) -> "LinMap":
        n = len(rows) if n is None else n
        return cls(n, _transpose(rows, n))

    def rows(self) -> tuple[int, ...]:
        return _transpose(self.columns, self.n)

    def apply(self, xmask: int) -> int:
        y = 0
        for j in bit_positions(xmask):
            y ^= self.columns[j]
        return y

    def inverse(self) -> "LinMap":
        n = self.n
        rows = list(self.rows())
        aug = [1 << i for i in range(n)]
        piv_rows: list[tuple[int, int]] = []
        used = [False] * n
        for col in range(n):
            p = next(
                r for r in range(n) if not used[r] and rows[r] & (1 << col)
            )
            used[p] = True
            piv_rows.append((col, p))
            for r in range(n):
                if r != p and rows[r] & (1 << col):
                    rows[r] ^= rows[p]
                    aug[r] ^= aug[p]
        inv_rows = [0] * n
        for col, p in piv_rows:
            inv_rows[col] = aug[p]
        return LinMap.from_rows(inv_rows, n)


def random_invertible(n: int, seed: int) -> LinMap:
    """Uniform-ish invertible matrix, deterministic from seed."""
    rng = random.Random(seed)
    while True:
        cols = tuple(rng.getrandbits(n) for _ in range(n))
        if gf2_rank(cols) == n:
            return LinMap(n, cols)


def _mul_linear(acc: set[int], form: int) -> set[int]:
    """Multiply a set of monomial masks by a homogeneous linear form."""
    out: set[int] = set()
    bits = [1 << b for b in bit_positions(form)]
    for m in acc:
        for b in bits:
            mm = m | b
            if mm in out:
                out.discard(mm)
            else:
                out.add(mm)
    return out


def apply_linear(f: Poly, L: LinMap) -> Poly:
    """Change of variables f^L(x) = f(Lx), expanded to multilinear ANF."""
    if L.n != f.n_vars:
        raise ShapeError("linear map dimension does not match n_vars")
    rows = L.rows()
    out: set[int] = set()
    const = f.constant
    for t in f.terms:
        acc = {0}
        for b in bit_positions(t):
            acc = _mul_linear(acc, rows[b])
        for m in acc:
            if m == 0:
                const ^= 1
            elif m in out:
                out.discard(m)
            else:
                out.add(m)
    return Poly(f.n_vars, frozenset(out), const)


def _derivative_mask(f: Poly, amask: int) -> Poly:
    out: set[int] = set()
    const = 0
    for t in f.terms:
        t1 = t & amask
        if t1 == 0:
            continue
        t0 = t & ~amask
        sub = t1
        # all proper subsets S of t1 contribute t0 | S (S = t1 cancels the
        # original term, S over subsets from the (x+1) factors)
        subsets = [0]
        for b in bit_positions(t1):
            subsets += [s | (1 << b) for s in subsets]
        for s in subsets:
            if s == sub:
                continue
            m = t0 | s
            if m == 0:
                const ^= 1
            elif m in out:
                out.discard(m)
            else:
                out.add(m)
    return Poly(f.n_vars, frozenset(out), const)


def discrete_derivative(f: Poly, a: Sequence[int]) -> Poly:
    """The finite difference D_a f(x) = f(x ^ a) ^ f(x), in multilinear ANF."""
    if len(a) != f.n_vars:
        raise ShapeError(f"expected {f.n_vars} bits, got {len(a)}")
    amask = 0
    for i, b in enumerate(a):
        if b & 1:
            amask |= 1 << i
    return _derivative_mask(f, amask)


def random_poly(n: int, max_degree: int = 3, seed: int = 0) -> Poly:
    """Each candidate monomial (and the constant) kept with probability 1/2.

    Deterministic from seed: the constant is drawn first, then monomials in
    (degree, indices) order.
    """
    if n < 1:
        raise ShapeError("need at least one variable")
    if not 1 <= max_degree <= 3:
        raise ShapeError("max_degree must be 1..3")
    rng = random.Random(seed)
    const = rng.getrandbits(1)
    terms = []
    for d in range(1, max_degree + 1):
        for combo in itertools.combinations(range(1, n + 1), d):
            if rng.getrandbits(1):
                terms.append(mask_of(combo))
    return Poly(n, frozenset(terms), const)


# ---------------------------------------------------------------------------
# Text format: first line "vars <n>", then one monomial per line.


def parse_poly(text: str) -> Poly:
    n_vars = None
    acc: set[int] = set()
    const = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n_vars is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "vars":
                raise ParseError("expected header 'vars <n>'", lineno)
            try:
                n_vars = int(parts[1])
            except ValueError:
                raise ParseError(f"bad variable count {parts[1]!r}", lineno) from None
            if n_vars < 0:
                raise ParseError("variable count must be nonnegative", lineno)
            continue
        if line == "1":
            const ^= 1
            continue
        mask = 0
        for factor in line.split("*"):
            factor = factor.strip()
            if not factor.startswith("x"):
                raise ParseError(f"bad monomial factor {factor!r}", lineno)
            try:
                i = int(factor[1:])
            except ValueError:
                raise ParseError(f"bad variable name {factor!r}", lineno) from None
            if not 1 <= i <= n_vars:
                raise ParseError(
                    f"variable x{i} out of range 1..{n_vars}", lineno
                )
            mask |= _var_bit(i)  # repeated factors reduce: x*x = x over F2
        if mask.bit_count() > 3:
            raise ParseError("monomial degree exceeds 3", lineno)
        acc.symmetric_difference_update({mask})
    if n_vars is None:
        raise ParseError("missing 'vars <n>' header")
    return Poly(n_vars, frozenset(acc), const)


def format_poly(f: Poly) -> str:
    lines = [f"vars {f.n_vars}"]
    lines += ["*".join(f"x{i}" for i in mono) for mono in f.monomials()]
    if f.constant:
        lines.append("1")
    return "\n".join(lines) + "\n"
