"""Dense statevector simulation of core-gate circuits.

All core gates are real matrices, so amplitudes stay real and the state is a
float64 vector. This module is the ground truth for every amplitude-level
check of the compiler and the rewrites.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .circuit import Circuit
from .errors import BudgetError, ShapeError

STATEVECTOR_LIMIT = 26
_NORM_TOL = 1e-10
_SQRT_HALF = 2.0 ** -0.5


def _check_norm(state: np.ndarray) -> None:
    norm2 = float(np.dot(state, state))
    if abs(norm2 - 1.0) > _NORM_TOL:
        raise RuntimeError(f"statevector norm drifted: |psi|^2 = {norm2}")


def _apply_h(state: np.ndarray, q: int, n: int) -> None:
    view = state.reshape([2] * n)
    idx0 = (slice(None),) * q + (0,)
    idx1 = (slice(None),) * q + (1,)
    a = view[idx0].copy()
    b = view[idx1]
    view[idx0] = (a + b) * _SQRT_HALF
    view[idx1] = (a - b) * _SQRT_HALF


def _apply_phase(state: np.ndarray, qubits: Sequence[int], n: int) -> None:
    view = state.reshape([2] * n)
    idx = [slice(None)] * n
    for q in qubits:
        idx[q] = 1
    view[tuple(idx)] *= -1.0


def _basis_index(bits: Sequence[int], n: int) -> int:
    idx = 0
    for q, b in enumerate(bits):
        if b & 1:
            idx |= 1 << (n - 1 - q)
    return idx


def run_statevector(c: Circuit, y: Sequence[int]) -> np.ndarray:
    """Final state of the full circuit (H columns included) on basis input y."""
    n = c.n_qubits
    if n > STATEVECTOR_LIMIT:
        raise BudgetError(f"statevector limited to {STATEVECTOR_LIMIT} qubits")
    c.require_core("statevector simulation")
    if len(y) != n:
        raise ShapeError(f"expected {n} input bits, got {len(y)}")
    state = np.zeros(1 << n, dtype=np.float64)
    state[_basis_index(y, n)] = 1.0
    for q in range(n):
        _apply_h(state, q, n)
    for g in c.gates:
        if g.kind == "H":
            _apply_h(state, g.qubits[0], n)
        else:
            _apply_phase(state, g.qubits, n)
        _check_norm(state)
    for q in range(n):
        _apply_h(state, q, n)
    _check_norm(state)
    return state


def statevector_amplitude(c: Circuit, y: Sequence[int], x: Sequence[int]) -> float:
    """<x| full(c) |y> by state evolution."""
    if len(x) != c.n_qubits:
        raise ShapeError(f"expected {c.n_qubits} output bits, got {len(x)}")
    state = run_statevector(c, y)
    return float(state[_basis_index(x, c.n_qubits)])


def statevector_prob_first_qubit(c: Circuit) -> float:
    """P(first qubit measures 1) after running the full circuit on |0...0>."""
    state = run_statevector(c, [0] * c.n_qubits)
    half = 1 << (c.n_qubits - 1)
    return float(np.dot(state[half:], state[half:]))
