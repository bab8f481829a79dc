"""Gap-counting engines.

- gap_quadratic: exact O(n^3) affine-split recursion for degree <= 2.
- gap_hitting: branch over a hitting set of the cubic terms, quadratic solve
  per branch, exact in O(2^|S| poly(n)).
- gap_via_minimization: change variables over GL_n(F2) so the polynomial
  depends on as few variables as possible, then brute-force those.
- gap_monte_carlo: Hoeffding-budgeted sampling estimate of gap/2^n.
- gap_auto: picks the cheapest applicable exact engine under a budget.

All exact engines agree with gap_bruteforce; gaps are exact Python ints.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, EngineError, InconclusiveError, ShapeError
from .f2poly import (
    LinMap,
    Poly,
    bit_positions,
    evaluate_batch,
    gap_bruteforce,
    gf2_extend_to_basis,
    gf2_nullspace,
    gf2_reduce,
)

DEFAULT_BUDGET_LOG2 = 30
DEFAULT_ENUM_LIMIT = 20
DEFAULT_EXACT_NODES = 200_000


# ---------------------------------------------------------------------------
# Degree-2 engine.


def _affine_split_gap(rows: dict[int, int], lin: int, const: int, n_ambient: int) -> int:
    """Exact gap of a quadratic form given as a symmetric adjacency.

    rows[p] is the bitmask of quadratic partners of bit position p, lin the
    linear-part mask, const the constant bit, n_ambient the cube dimension.
    Repeatedly rewrites x_a x_b + x_a A + x_b B + C as 2 * (A B + C) on two
    fewer variables; each step is O(n) word operations.
    """
    elims = 0
    for a in sorted(rows):
        ra = rows.get(a, 0)
        if not ra:
            continue
        b = (ra & -ra).bit_length() - 1
        bit_a, bit_b = 1 << a, 1 << b
        A = ra & ~bit_b
        B = rows.get(b, 0) & ~bit_a
        cA = (lin >> a) & 1
        cB = (lin >> b) & 1
        for p in bit_positions(A):
            rows[p] &= ~bit_a
        for p in bit_positions(B):
            rows[p] &= ~bit_b
        rows[a] = 0
        rows[b] = 0
        lin &= ~(bit_a | bit_b)
        # add the product A*B: pair terms, squares to linear, constants
        for p in bit_positions(A):
            rows[p] = rows.get(p, 0) ^ B
        for p in bit_positions(B):
            rows[p] = rows.get(p, 0) ^ A
        lin ^= A & B
        if cB:
            lin ^= A
        if cA:
            lin ^= B
        const ^= cA & cB
        elims += 1
    if lin:
        return 0
    mag = 1 << (n_ambient - elims)
    return -mag if const else mag


def gap_quadratic(f: Poly) -> int:
    """Exact gap for degree <= 2; every nonzero value is a signed power of 2."""
    if f.degree() > 2:
        raise EngineError("gap_quadratic handles degree <= 2 only")
    rows: dict[int, int] = {}
    lin = 0
    for t in f.terms:
        if t.bit_count() == 1:
            lin ^= t
        else:
            p, q = bit_positions(t)
            rows[p] = rows.get(p, 0) ^ (1 << q)
            rows[q] = rows.get(q, 0) ^ (1 << p)
    return _affine_split_gap(rows, lin, f.constant, f.n_vars)


# ---------------------------------------------------------------------------
# Hitting-set engine.


@dataclass(frozen=True)
class HittingSet:
    """Variables meeting every cubic monomial; exact means proven minimum."""

    variables: frozenset[int]
    exact: bool

    def mask(self) -> int:
        m = 0
        for i in self.variables:
            m |= 1 << (i - 1)
        return m


class _NodeBudget(Exception):
    pass


def _greedy_hitting_mask(cubics: list[int]) -> int:
    mask = 0
    for t in cubics:
        if not t & mask:
            mask |= t
    return mask


def _disjoint_lower_bound(cubics: list[int], cover: int) -> int:
    count = 0
    used = 0
    for t in cubics:
        if t & cover or t & used:
            continue
        count += 1
        used |= t
    return count


def _exact_hitting_mask(cubics: list[int], start_best: int, node_budget: int) -> int:
    best_mask = start_best
    best_size = start_best.bit_count()
    nodes = 0

    def rec(mask: int, size: int) -> None:
        nonlocal best_mask, best_size, nodes
        nodes += 1
        if nodes > node_budget:
            raise _NodeBudget
        uncovered = [t for t in cubics if not t & mask]
        if not uncovered:
            if size < best_size:
                best_mask, best_size = mask, size
            return
        if size + _disjoint_lower_bound(uncovered, mask) >= best_size:
            return
        pick = uncovered[0]
        others = 0
        for t in uncovered[1:]:
            others |= t
        shared = pick & others
        unique = pick & ~others
        branch = shared
        if unique:
            branch |= unique & -unique  # unique vars are interchangeable
        for b in bit_positions(branch):
            rec(mask | (1 << b), size + 1)

    rec(0, 0)
    return best_mask


def find_hitting_set(f: Poly, exact_budget: int = DEFAULT_EXACT_NODES) -> HittingSet:
    """Greedy 3-approximation, then branch-and-bound for a proven minimum.

    The greedy phase takes all three variables of each uncovered cubic term,
    so its size is at most 3x optimal. The exact phase is abandoned (greedy
    returned, exact=False) if it exceeds the node budget.
    """
    if f.degree() > 3:
        raise EngineError("find_hitting_set handles degree <= 3 only")
    cubics = sorted(t for t in f.terms if t.bit_count() == 3)
    if not cubics:
        return HittingSet(frozenset(), True)
    greedy = _greedy_hitting_mask(cubics)
    try:
        best = _exact_hitting_mask(cubics, greedy, exact_budget)
        exact = True
    except _NodeBudget:
        best, exact = greedy, False
    vars_ = frozenset(b + 1 for b in bit_positions(best))
    return HittingSet(vars_, exact)


def gap_hitting(
    f: Poly,
    hitting: HittingSet | frozenset[int] | set[int],
    budget_log2: int = DEFAULT_BUDGET_LOG2,
) -> int:
    """Exact gap by summing quadratic gaps over all assignments of S.

    Branch gaps are taken over the n-|S| free variables, so the plain sum is
    the gap over the full cube.
    """
    s_vars = hitting.variables if isinstance(hitting, HittingSet) else frozenset(hitting)
    s_mask = 0
    for i in s_vars:
        if not 1 <= i <= f.n_vars:
            raise ShapeError(f"hitting-set variable x{i} out of range")
        s_mask |= 1 << (i - 1)
    for t in f.terms:
        if t.bit_count() == 3 and not t & s_mask:
            raise ShapeError("set does not hit every cubic monomial")
    k = s_mask.bit_count()
    size = max(1, len(f.terms))
    if (1 << k) * size > 1 << budget_log2:
        raise BudgetError(
            f"hitting-set branching needs ~2^{k}*{size} evaluations, over 2^{budget_log2}"
        )
    s_bits = bit_positions(s_mask)
    pre = []
    for t in f.terms:
        ts = t & s_mask
        free = t & ~s_mask
        pre.append((ts, free, free.bit_count()))
    n_free = f.n_vars - k
    total = 0
    for assign in range(1 << k):
        amask = 0
        for j, b in enumerate(s_bits):
            if (assign >> j) & 1:
                amask |= 1 << b
        rows: dict[int, int] = {}
        lin = 0
        const = f.constant
        for ts, free, fc in pre:
            if ts & amask != ts:
                continue
            if fc == 0:
                const ^= 1
            elif fc == 1:
                lin ^= free
            else:
                p, q = bit_positions(free)
                rows[p] = rows.get(p, 0) ^ (1 << q)
                rows[q] = rows.get(q, 0) ^ (1 << p)
        total += _affine_split_gap(rows, lin, const, n_free)
    return total


# ---------------------------------------------------------------------------
# Variable minimization over GL_n(F2).


@dataclass(frozen=True)
class MinimizationResult:
    """Change of variables isolating the essential variables.

    L maps the first essential_count coordinates onto a complement of the
    shift-invariance subspace V = {a : f(x^a) = f(x) for all x}; columns
    essential_count+1..n span V, so f(Lx) depends only on the leading block.
    """

    L: LinMap
    essential_count: int
    invariance_dim: int
    anti_invariant_found: bool


def _split_terms(f: Poly) -> tuple[list[int], list[int], list[int]]:
    cubics, quads, lins = [], [], []
    for t in f.terms:
        c = t.bit_count()
        if c == 3:
            cubics.append(t)
        elif c == 2:
            quads.append(t)
        else:
            lins.append(t)
    return cubics, quads, lins


def _pair_equations(cubics: list[int]) -> list[int]:
    """For each variable pair, the mask of third variables over the cubic
    terms containing that pair; a must be orthogonal to every such mask for
    the quadratic part of D_a f to vanish."""
    eqs: dict[int, int] = {}
    for t in cubics:
        bits = bit_positions(t)
        for drop in range(3):
            pair = 0
            for j, b in enumerate(bits):
                if j != drop:
                    pair |= 1 << b
            eqs[pair] = eqs.get(pair, 0) ^ (1 << bits[drop])
    return [v for v in eqs.values() if v]


def _delta_affine(amask: int, cubics: list[int], quads: list[int], lins: list[int]) -> tuple[int, int]:
    """(linear coefficient mask, constant bit) of D_a f, valid when the
    quadratic part of D_a f is already known to vanish."""
    lin = 0
    const = 0
    for t in cubics:
        out = t & ~amask
        if out == 0:
            lin ^= t
            const ^= 1
        elif out.bit_count() == 1:
            lin ^= out
    for t in quads:
        inn = t & amask
        if inn == t:
            lin ^= t
            const ^= 1
        elif inn:
            lin ^= t & ~amask
    for t in lins:
        if t & amask:
            const ^= 1
    return lin, const


def invariance_space(f: Poly, enum_limit: int = DEFAULT_ENUM_LIMIT) -> MinimizationResult:
    """Compute V = {a : D_a f == 0} and a change of variables isolating it.

    The quadratic part of D_a f vanishing is linear in a and yields a
    superspace V2; if dim V2 <= enum_limit its members are enumerated and
    checked exactly, otherwise the analysis is inconclusive. Any direction
    with D_a f == 1 (an anti-invariant) is recorded: it forces gap(f) = 0.
    """
    if f.degree() > 3:
        raise EngineError("invariance_space handles degree <= 3 only")
    n = f.n_vars
    cubics, quads, lins = _split_terms(f)
    v2_basis = gf2_nullspace(_pair_equations(cubics), n)
    d2 = len(v2_basis)
    if d2 > enum_limit:
        raise InconclusiveError(
            f"invariance superspace has dimension {d2} > enumeration limit {enum_limit}"
        )
    members = []
    anti = False
    for sel in range(1 << d2):
        a = 0
        s = sel
        while s:
            low = s & -s
            a ^= v2_basis[low.bit_length() - 1]
            s ^= low
        lin, const = _delta_affine(a, cubics, quads, lins)
        if lin == 0:
            if const == 0:
                members.append(a)
            else:
                anti = True
    v_basis = gf2_reduce(members)
    dim_v = len(v_basis)
    if len(members) != 1 << dim_v:
        raise RuntimeError("invariant directions do not form a subspace")
    comp = gf2_extend_to_basis(v_basis, n)
    essential = n - dim_v
    assert len(comp) == essential
    L = LinMap(n, tuple(comp + v_basis))
    return MinimizationResult(L, essential, dim_v, anti)


def gap_via_minimization(
    f: Poly,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
    budget_log2: int = DEFAULT_BUDGET_LOG2,
) -> int:
    """Exact gap as 2^(n-v) times the gap over the v essential variables."""
    res = invariance_space(f, enum_limit)
    if res.anti_invariant_found:
        return 0
    v = res.essential_count
    if (1 << v) * max(1, len(f.terms)) > 1 << budget_log2:
        raise BudgetError(
            f"minimized polynomial still has {v} essential variables, over budget"
        )
    from .f2poly import apply_linear

    fl = apply_linear(f, res.L)
    low = (1 << v) - 1
    if fl.support() & ~low:
        raise RuntimeError("transformed polynomial uses a non-essential variable")
    inner = gap_bruteforce(Poly(v, fl.terms, fl.constant))
    return inner << (f.n_vars - v)


# ---------------------------------------------------------------------------
# Monte Carlo estimation.


@dataclass(frozen=True)
class GapEstimate:
    """Sampling estimate of gap/2^n with a Hoeffding (eps, delta) guarantee."""

    normalized_estimate: float
    epsilon: float
    delta: float
    samples: int
    seed: int


def hoeffding_samples(epsilon: float, delta: float) -> int:
    """Samples sufficient for |mean - truth| <= eps with prob >= 1 - delta,
    for +-1-valued draws: ceil(2 ln(2/delta) / eps^2)."""
    return math.ceil(2.0 * math.log(2.0 / delta) / (epsilon * epsilon))


def gap_monte_carlo(f: Poly, epsilon: float, delta: float, seed: int) -> GapEstimate:
    """Average of (-1)^f over seeded uniform samples; deterministic per seed."""
    if not 0.0 < epsilon <= 1.0:
        raise ShapeError("epsilon must lie in (0, 1]")
    if not 0.0 < delta < 1.0:
        raise ShapeError("delta must lie in (0, 1)")
    s = hoeffding_samples(epsilon, delta)
    rng = random.Random(seed)
    masks = [rng.getrandbits(f.n_vars) for _ in range(s)]
    if f.n_vars <= 63:
        ones = int(evaluate_batch(f, np.array(masks, dtype=np.uint64)).sum())
    else:
        ones = sum(f.eval_mask(m) for m in masks)
    est = (s - 2 * ones) / s
    return GapEstimate(est, epsilon, delta, s, seed)


# ---------------------------------------------------------------------------
# Dispatch.


def gap_auto(f: Poly, budget_log2: int = DEFAULT_BUDGET_LOG2) -> int:
    """Cheapest applicable exact engine; every choice returns the same value.

    Costs compared: n^3 for the quadratic engine, 2^|S| n^3 for hitting-set
    branching, 2^v for minimization (attempted only when its own enumeration
    fits the budget), 2^n for brute force. Everything over budget raises,
    naming the sampling fallback.
    """
    n = f.n_vars
    size = max(1, len(f.terms))
    cap = 1 << budget_log2
    if f.degree() <= 2:
        return gap_quadratic(f)

    options: list[tuple[int, int, str, object]] = []
    hs = find_hitting_set(f)
    k = len(hs.variables)
    if (1 << k) * size <= cap:
        options.append(((1 << k) * n**3, 0, "hitting", hs))
    if n <= 30 and (1 << n) * size <= cap:
        options.append((1 << n, 2, "brute", None))

    d2 = len(gf2_nullspace(_pair_equations(_split_terms(f)[0]), n))
    enum_cost = (1 << d2) * size if d2 <= DEFAULT_ENUM_LIMIT else None
    best_so_far = min((c for c, *_ in options), default=None)
    if enum_cost is not None and enum_cost <= cap and (
        best_so_far is None or enum_cost < best_so_far
    ):
        res = invariance_space(f)
        if res.anti_invariant_found:
            return 0
        v = res.essential_count
        if (1 << v) * size <= cap:
            options.append(((1 << v), 1, "minimize", res))

    if not options:
        raise BudgetError(
            f"no exact engine fits budget 2^{budget_log2}; "
            "gap_monte_carlo remains available for an estimate"
        )
    _, _, name, payload = min(options, key=lambda o: (o[0], o[1]))
    if name == "hitting":
        return gap_hitting(f, payload, budget_log2)
    if name == "minimize":
        return gap_via_minimization(f, budget_log2=budget_log2)
    return gap_bruteforce(f)
