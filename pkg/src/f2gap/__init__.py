"""Circuits over {H, Z, CZ, CCZ} and their degree-3 polynomials over F2.

A circuit's amplitudes are exact dyadics proportional to the gap (zeroes
minus ones) of its polynomial; this package compiles in both directions and
ships a suite of exact and approximate gap engines.
"""

from .circuit import (
    CCX,
    CCZ,
    CNOT,
    CZ,
    Circuit,
    Gate,
    H,
    X,
    Z,
    dagger,
    insert_h_pairs,
    lower,
    parse_circuit,
    random_circuit,
    sandwich_measurement,
    serialize_circuit,
    simplify_hh,
)
from .compiler import (
    Amplitude,
    CompiledPoly,
    amplitude,
    amplitude_00,
    circuit_to_poly,
    format_compiled,
    meas_prob_first_qubit,
    poly_to_circuit,
)
from .errors import (
    BudgetError,
    EngineError,
    F2GapError,
    InconclusiveError,
    ParseError,
    ShapeError,
)
from .f2poly import (
    LinMap,
    Poly,
    apply_linear,
    discrete_derivative,
    format_poly,
    gap_bruteforce,
    parse_poly,
    random_invertible,
    random_poly,
    restrict,
    restrict_drop,
    restrict_many,
)
from .gap import (
    GapEstimate,
    HittingSet,
    MinimizationResult,
    find_hitting_set,
    gap_auto,
    gap_hitting,
    gap_monte_carlo,
    gap_quadratic,
    gap_via_minimization,
    hoeffding_samples,
    invariance_space,
)
from .oracle import (
    statevector_amplitude,
    statevector_prob_first_qubit,
)
from .satcount import (
    BoolCircuit,
    ReversibleCircuit,
    apply_reversible,
    count_sat,
    parse_netlist,
    to_reversible,
)
from .width import (
    Hypergraph,
    WidthReport,
    build_hypergraph,
    chromatic_number,
    width_heuristic_circuit,
    width_report,
)

__version__ = "0.1.0"
