"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Every tolerance is stated inline; exact quantities are compared as
exact integers or canonical dyadics, never through floats.
"""

import itertools
import math
import random
import time

import pytest

from f2gap import (
    Amplitude,
    CZ,
    Circuit,
    H,
    InconclusiveError,
    LinMap,
    Poly,
    amplitude,
    amplitude_00,
    apply_linear,
    circuit_to_poly,
    find_hitting_set,
    gap_auto,
    gap_bruteforce,
    gap_hitting,
    gap_monte_carlo,
    gap_quadratic,
    gap_via_minimization,
    insert_h_pairs,
    invariance_space,
    meas_prob_first_qubit,
    random_circuit,
    random_invertible,
    random_poly,
    statevector_amplitude,
    statevector_prob_first_qubit,
)
from f2gap.oracle import run_statevector
from f2gap.satcount import count_sat, assemble_counting_circuit
from util import (
    all_triples_poly,
    disjoint_pairs_poly,
    path_poly,
    poly_isomorphic,
    random_netlist,
    star_circuit,
    worked_example_circuit,
    worked_example_poly,
)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"\n[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {num}: {detail}"


def sparse_cubic(seed: int, max_n: int = 18) -> Poly:
    rng = random.Random(seed)
    n = rng.randint(3, max_n)
    monomials = []
    for _ in range(rng.randint(1, 10)):
        monomials.append(rng.sample(range(1, n + 1), 3))
    for _ in range(rng.randint(0, 8)):
        monomials.append(rng.sample(range(1, n + 1), 2))
    for _ in range(rng.randint(0, 5)):
        monomials.append(rng.sample(range(1, n + 1), 1))
    return Poly.from_terms(n, monomials, constant=rng.getrandbits(1))


def sparse_invertible(n: int, ops: int, seed: int) -> LinMap:
    rng = random.Random(seed)
    rows = [1 << i for i in range(n)]
    for _ in range(ops):
        i, j = rng.sample(range(n), 2)
        rows[i] ^= rows[j]
    return LinMap.from_rows(rows, n)


CORPUS_SEEDS = list(range(200))


def corpus_circuit(seed: int) -> Circuit:
    rng = random.Random(10_000 + seed)
    if seed < 120:
        n_qubits = rng.randint(5, 8)
        n_gates = rng.randint(5, 40)
    else:
        n_qubits = rng.randint(1, 4)
        n_gates = rng.randint(1, 12)
    return random_circuit(n_qubits, n_gates, seed=20_000 + seed)


@pytest.fixture(scope="module")
def compiled_corpus():
    """(circuit, compiled poly, exact gap) for the 200 corpus circuits."""
    out = []
    for seed in CORPUS_SEEDS:
        c = corpus_circuit(seed)
        cp = circuit_to_poly(c)
        out.append((c, cp, gap_auto(cp.poly)))
    return out


def test_criterion_01_worked_example_fixture():
    t0 = time.perf_counter()
    c = worked_example_circuit()
    cp = circuit_to_poly(c)
    ok_poly = poly_isomorphic(cp.poly, worked_example_poly())
    ok_gap = gap_bruteforce(cp.poly) == 16
    ok_amp = amplitude_00(c) == Amplitude(1, 2)
    elapsed = time.perf_counter() - t0
    report(
        1,
        ok_poly and ok_gap and ok_amp and elapsed < 1.0,
        f"3-qubit worked example: polynomial up to bijection, gap=16, "
        f"amplitude=1/2 exactly ({elapsed:.3f}s < 1s)",
    )


def test_criterion_02_equivalent_circuits_fixture():
    cz_form = Circuit(2, (CZ(0, 1),))
    h_form = Circuit(1, (H(0),))
    target = Poly.from_terms(2, [(1, 2)])
    cp_cz, cp_h = circuit_to_poly(cz_form), circuit_to_poly(h_form)
    ok_polys = (
        poly_isomorphic(cp_cz.poly, target)
        and poly_isomorphic(cp_h.poly, target)
        and cp_cz.h == 0
        and cp_h.h == 1
    )
    a_cz, a_h = amplitude_00(cz_form), amplitude_00(h_form)
    ok_exact = a_cz == Amplitude(1, 2) and a_h == Amplitude(1, 1)
    ok_oracle = (
        abs(a_cz.to_float() - statevector_amplitude(cz_form, [0, 0], [0, 0])) <= 1e-12
        and abs(a_h.to_float() - statevector_amplitude(h_form, [0], [0])) <= 1e-12
    )
    report(
        2,
        ok_polys and ok_exact and ok_oracle,
        "CZ and single-H circuits both compile to x1*x2; amplitudes 1/2 and "
        "(1,1) dyadic, matching the oracle to 1e-12",
    )


def test_criterion_03_oracle_equivalence(compiled_corpus):
    t0 = time.perf_counter()
    worst = 0.0
    pairs_checked = 0
    for c, cp, gap in compiled_corpus:
        a = Amplitude(gap, cp.h + 2 * c.n_qubits)
        zeros = [0] * c.n_qubits
        worst = max(worst, abs(a.to_float() - statevector_amplitude(c, zeros, zeros)))
        if c.n_qubits <= 4:
            n = c.n_qubits
            for y in itertools.product((0, 1), repeat=n):
                state = run_statevector(c, list(y))
                for xi, x in enumerate(itertools.product((0, 1), repeat=n)):
                    got = amplitude(c, y, x).to_float()
                    worst = max(worst, abs(got - float(state[xi])))
                    pairs_checked += 1
    elapsed = time.perf_counter() - t0
    report(
        3,
        worst <= 1e-9 and elapsed < 120.0,
        f"200 random circuits (l<=8, <=40 gates): max |compiled - statevector| "
        f"= {worst:.2e} <= 1e-9 over <0|C|0> and {pairs_checked} exhaustive "
        f"(x,y) pairs at l<=4 ({elapsed:.1f}s < 120s)",
    )


def test_criterion_04_quadratic_engine():
    candidates = [
        sum(1 << (i - 1) for i in combo)
        for d in (1, 2)
        for combo in itertools.combinations(range(1, 5), d)
    ]
    assert len(candidates) == 10
    checked = 0
    ok = True
    for bits in range(1 << 10):
        terms = frozenset(c for j, c in enumerate(candidates) if (bits >> j) & 1)
        for const in (0, 1):
            f = Poly(4, terms, const)
            g = gap_quadratic(f)
            ok = ok and g == gap_bruteforce(f) and (g == 0 or abs(g) & (abs(g) - 1) == 0)
            checked += 1
    assert checked == 2048
    for seed in range(500):
        rng = random.Random(30_000 + seed)
        f = random_poly(rng.randint(1, 20), 2, seed=31_000 + seed)
        g = gap_quadratic(f)
        ok = ok and g == gap_bruteforce(f) and (g == 0 or abs(g) & (abs(g) - 1) == 0)
    report(
        4,
        ok,
        "degree-2 engine: exact on all 2048 polynomials with n=4 and 500 "
        "random n<=20 instances; every nonzero gap a signed power of two",
    )


def test_criterion_05_hitting_engine():
    ok = True
    for seed in range(300):
        f = sparse_cubic(40_000 + seed)
        ok = ok and gap_hitting(f, find_hitting_set(f)) == gap_bruteforce(f)
    star = star_circuit(8)
    assert star.count("CCZ") == 21
    cp = circuit_to_poly(star)
    hs = find_hitting_set(cp.poly)
    ok_star_set = len(hs.variables) == 1 and hs.exact
    a = Amplitude(gap_hitting(cp.poly, hs), cp.h + 2 * star.n_qubits)
    zeros = [0] * 8
    ok_star_amp = abs(a.to_float() - statevector_amplitude(star, zeros, zeros)) <= 1e-12
    report(
        5,
        ok and ok_star_set and ok_star_amp,
        "gap_hitting = brute force on 300 random cubics (n<=18); 8-qubit star "
        "circuit (21 CCZ gates) has a size-1 exact hitting set and matches "
        "the statevector amplitude",
    )


def test_criterion_06_gl_invariance():
    ok = True
    for seed in range(100):
        rng = random.Random(50_000 + seed)
        n = rng.randint(2, 14)
        f = random_poly(n, 3, seed=51_000 + seed)
        L = random_invertible(n, seed=52_000 + seed)
        g = apply_linear(f, L)
        ok = ok and g.degree() <= 3 and gap_bruteforce(g) == gap_bruteforce(f)
    report(
        6,
        ok,
        "100 random (f, L) pairs with n<=14: gap(f^L) = gap(f) exactly and "
        "deg(f^L) <= 3",
    )


def test_criterion_07_minimization():
    parity10 = Poly.from_terms(10, [(i,) for i in range(1, 11)])
    res = invariance_space(parity10)
    ok_parity = res.essential_count == 1
    ok_planted = True
    for seed in range(5):
        base = random_poly(6, 3, seed=60_000 + seed)
        f16 = Poly(16, base.terms, base.constant)
        M = sparse_invertible(16, ops=24, seed=61_000 + seed)
        planted = apply_linear(f16, M)
        res = invariance_space(planted)
        ok_planted = (
            ok_planted
            and res.essential_count <= 6
            and gap_via_minimization(planted) == gap_bruteforce(planted)
        )
    report(
        7,
        ok_parity and ok_planted,
        "x1+...+x10 reduces to 1 essential variable; planted n=16 instances "
        "with <=6 essential variables recover the dimension and the exact gap",
    )


def test_criterion_08_monte_carlo_calibration():
    f = random_poly(16, 3, seed=777)
    truth = gap_bruteforce(f) / 2.0**16
    expected_samples = math.ceil(2 * math.log(40) / 0.0025)
    failures = 0
    samples_ok = True
    for seed in range(100):
        est = gap_monte_carlo(f, 0.05, 0.05, seed=seed)
        samples_ok = samples_ok and est.samples == expected_samples
        if abs(est.normalized_estimate - truth) > 0.05:
            failures += 1
    report(
        8,
        failures <= 10 and samples_ok,
        f"Monte Carlo at eps=delta=0.05 on a fixed n=16 cubic: {failures}/100 "
        f"failures (<=10 allowed); samples = {expected_samples} exactly",
    )


def test_criterion_09_three_terms_transform():
    ok_occ = True
    ok_amp = True
    for seed in range(50):
        rng = random.Random(70_000 + seed)
        c = random_circuit(rng.randint(1, 4), rng.randint(1, 10), seed=71_000 + seed)
        t = insert_h_pairs(c)
        cp = circuit_to_poly(t)
        occurrences = {}
        for term in cp.poly.terms:
            m = term
            while m:
                low = m & -m
                occurrences[low] = occurrences.get(low, 0) + 1
                m ^= low
        ok_occ = ok_occ and all(v <= 3 for v in occurrences.values())
        ok_amp = ok_amp and amplitude_00(c) == amplitude_00(t)
    report(
        9,
        ok_occ and ok_amp,
        "50 random circuits: after inserting H pairs every variable occurs in "
        "<= 3 monomials and the amplitude is preserved exactly",
    )


def test_criterion_10_measurement_reduction():
    worst = 0.0
    for seed in range(100):
        rng = random.Random(80_000 + seed)
        c = random_circuit(rng.randint(1, 6), rng.randint(1, 14), seed=81_000 + seed)
        p = meas_prob_first_qubit(c)
        worst = max(worst, abs(float(p) - statevector_prob_first_qubit(c)))
    report(
        10,
        worst <= 1e-9,
        f"measurement probability via the sandwiched circuit matches the "
        f"statevector on 100 random circuits (l<=6), max error {worst:.2e} <= 1e-9",
    )


def test_criterion_11_sat_counting():
    t0 = time.perf_counter()
    fixtures = {
        "inputs 2\ng1 = AND x1 x2\noutput g1\n": 1,
        "inputs 2\ng1 = OR x1 x2\noutput g1\n": 3,
        "inputs 2\ng1 = XOR x1 x2\noutput g1\n": 2,
    }
    from f2gap import parse_netlist

    ok = all(count_sat(parse_netlist(t)) == want for t, want in fixtures.items())
    ok_gap = True
    for seed in range(30):
        rng = random.Random(90_000 + seed)
        b = random_netlist(rng.randint(2, 10), rng.randint(1, 8), seed=91_000 + seed)
        count = count_sat(b)
        truth = b.count_by_enumeration()
        ok = ok and count == truth
        inner = assemble_counting_circuit(b)
        cp = circuit_to_poly(inner)
        a = Amplitude(gap_auto(cp.poly), cp.h + 2 * inner.n_qubits)
        boolean_gap = a.g << (b.n_inputs - a.k // 2) if a.g else 0
        ok_gap = ok_gap and boolean_gap == (1 << b.n_inputs) - 2 * truth
    elapsed = time.perf_counter() - t0
    report(
        11,
        ok and ok_gap and elapsed < 60.0,
        f"count_sat equals truth-table enumeration on AND/OR/XOR and 30 random "
        f"netlists (<=10 inputs); gap = 2^n - 2*count holds exactly "
        f"({elapsed:.1f}s < 60s)",
    )


def test_criterion_12_width_bounds():
    from f2gap import width_report

    rep = width_report(path_poly(8))
    ok_path = rep.lower_bound == 1 and rep.upper_bound == 1
    rep = width_report(disjoint_pairs_poly(8))
    ok_pairs = rep.chromatic == 2 and rep.chromatic_exact and rep.upper_bound == 4
    rep = width_report(all_triples_poly(6))
    ok_triples = rep.upper_bound == 6
    ok_sandwich = True
    for seed in range(80):
        rng = random.Random(95_000 + seed)
        f = random_poly(rng.randint(1, 12), 3, seed=96_000 + seed)
        rep = width_report(Poly(f.n_vars, f.terms, 0))
        if rep.chromatic_exact:
            ok_sandwich = ok_sandwich and -(-rep.chromatic // 2) <= rep.upper_bound
    report(
        12,
        ok_path and ok_pairs and ok_triples and ok_sandwich,
        "width bounds: path n=8 gives lower=upper=1, disjoint pairs n=8 give "
        "chi=2 exact and upper=4, all-triples n=6 gives upper=6, and "
        "ceil(chi/2) <= upper across the corpus",
    )


def test_criterion_13_unitarity_bound(compiled_corpus):
    ok = True
    for c, cp, gap in compiled_corpus:
        ok = ok and gap * gap <= 1 << (cp.poly.n_vars + c.n_qubits)
    report(
        13,
        ok,
        "|gap(f_C)| <= 2^((n+l)/2) as exact integers over all 200 compiled "
        "corpus circuits",
    )
