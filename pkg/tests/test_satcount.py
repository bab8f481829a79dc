import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f2gap import (
    Circuit,
    H,
    ParseError,
    apply_reversible,
    circuit_to_poly,
    count_sat,
    gap_bruteforce,
    lower,
    parse_netlist,
    statevector_amplitude,
    to_reversible,
)
from f2gap.satcount import assemble_counting_circuit
from util import random_netlist

AND2 = "inputs 2\ng1 = AND x1 x2\noutput g1\n"
OR2 = "inputs 2\ng1 = OR x1 x2\noutput g1\n"
XOR2 = "inputs 2\ng1 = XOR x1 x2\noutput g1\n"
NOT1 = "inputs 1\ng1 = NOT x1\noutput g1\n"


class TestParse:
    def test_and(self):
        b = parse_netlist(AND2)
        assert b.n_inputs == 2 and b.output == "g1"
        assert [b.evaluate([x1, x2]) for x1, x2 in itertools.product((0, 1), repeat=2)] == [0, 0, 0, 1]

    def test_not(self):
        b = parse_netlist(NOT1)
        assert b.evaluate([0]) == 1 and b.evaluate([1]) == 0

    def test_undefined_operand(self):
        with pytest.raises(ParseError):
            parse_netlist("inputs 1\ng1 = AND x1 g9\noutput g1\n")

    def test_operand_typo_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_netlist("inputs 1\ng1 = NAND x1\noutput g1\n")

    def test_missing_output(self):
        with pytest.raises(ParseError):
            parse_netlist("inputs 1\ng1 = NOT x1\n")

    def test_duplicate_operands_rejected(self):
        with pytest.raises(ParseError):
            parse_netlist("inputs 1\ng1 = XOR x1 x1\noutput g1\n")

    def test_forward_reference_rejected(self):
        with pytest.raises(ParseError):
            parse_netlist("inputs 1\ng1 = NOT g2\ng2 = NOT x1\noutput g1\n")

    def test_output_may_be_an_input(self):
        b = parse_netlist("inputs 2\noutput x2\n")
        assert b.evaluate([0, 1]) == 1


class TestReversible:
    def check_all_inputs(self, b):
        rc = to_reversible(b)
        for m in range(1 << b.n_inputs):
            bits = [(m >> i) & 1 for i in range(b.n_inputs)]
            state = bits + [0] * (1 + rc.n_ancillas)
            out = apply_reversible(rc, state)
            assert out[: b.n_inputs] == bits, "input register must be preserved"
            assert out[b.n_inputs] == b.evaluate(bits), "output register"
            assert all(v == 0 for v in out[b.n_inputs + 1 :]), "ancillas restored"

    def test_primitive_gates(self):
        for text in (AND2, OR2, XOR2, NOT1):
            self.check_all_inputs(parse_netlist(text))

    def test_and_through_statevector(self):
        b = parse_netlist(AND2)
        rc = to_reversible(b)
        n = rc.n_qubits
        # wrap in explicit H columns so the implicit ones cancel and the
        # oracle reports bare <target|gates|input> entries
        col = tuple(H(q) for q in range(n))
        c = lower(Circuit(n, col + rc.gates + col))
        for m in range(4):
            bits = [(m >> i) & 1 for i in range(2)]
            inp = bits + [0] * (n - 2)
            want = bits + [b.evaluate(bits)] + [0] * (n - 3)
            assert statevector_amplitude(c, inp, want) == pytest.approx(1.0)

    def test_not_chain_aliasing(self):
        b = parse_netlist(
            "inputs 2\ng1 = NOT x1\ng2 = AND x1 g1\ng3 = NOT g1\n"
            "g4 = OR g2 g3\ng5 = XOR g4 x2\noutput g5\n"
        )
        self.check_all_inputs(b)

    @given(st.integers(0, 19))
    def test_random_netlists_restore_ancillas(self, s):
        b = random_netlist(2 + s % 7, 1 + (s * 7) % 12, seed=500 + s)
        self.check_all_inputs(b)

    def test_ancilla_bound(self):
        for s in range(30):
            b = random_netlist(3 + s % 6, 1 + s % 10, seed=700 + s)
            rc = to_reversible(b)
            heavy = sum(1 for g in b.gates if g.op != "NOT")
            assert rc.n_ancillas <= 2 * heavy + 1


class TestCountSat:
    def test_fixtures(self):
        assert count_sat(parse_netlist(AND2)) == 1
        assert count_sat(parse_netlist(OR2)) == 3
        assert count_sat(parse_netlist(XOR2)) == 2
        assert count_sat(parse_netlist(NOT1)) == 1

    def test_gap_identity(self):
        b = parse_netlist(OR2)
        cp = circuit_to_poly(assemble_counting_circuit(b))
        gap = gap_bruteforce(cp.poly)
        # the compiled gap carries the normalization of the assembled
        # circuit; project it back to the input cube
        k = cp.h + 2 * assemble_counting_circuit(b).n_qubits
        from f2gap import Amplitude

        a = Amplitude(gap, k)
        boolean_gap = a.g << (b.n_inputs - a.k // 2) if a.g else 0
        assert boolean_gap == (1 << b.n_inputs) - 2 * count_sat(b)

    @given(st.integers(0, 14))
    def test_matches_truth_table(self, s):
        b = random_netlist(2 + s % 6, 1 + (s * 5) % 9, seed=300 + s)
        assert count_sat(b) == b.count_by_enumeration()
