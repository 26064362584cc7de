"""Ideal pure-state backend."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..compiler import Circuit, CircuitError, Gate, gate_matrix
from ..model import MAX_DENSE_QUBITS, DimensionError, z_signs
from ._tensor import apply_on_axes, qubit_axis


@dataclass(frozen=True)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(f"expected {2**self.n_qubits} amplitudes, got shape {amps.shape}")
        if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
            raise ValueError("state vector is not normalized")
        object.__setattr__(self, "amplitudes", amps)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def init_all_up(n_qubits: int, max_qubits: int = MAX_DENSE_QUBITS) -> StateVector:
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    if n_qubits > max_qubits:
        raise DimensionError(f"{n_qubits} qubits exceeds statevector maximum of {max_qubits}")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def apply_gate_array(amps: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    if not gate.is_unitary:
        raise CircuitError("measurement cannot be applied to a state vector; sample its probabilities instead")
    if max(gate.qubits) >= n:
        raise CircuitError(f"gate {gate} out of range for {n} qubits")
    axes = [qubit_axis(q, n) for q in gate.qubits]
    t = apply_on_axes(amps.reshape((2,) * n), gate_matrix(gate), axes)
    return t.reshape(-1)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    return StateVector(state.n_qubits, apply_gate_array(state.amplitudes, gate, state.n_qubits))


def expectation_sigma_z(state: StateVector, i: int) -> float:
    if not 0 <= i < state.n_qubits:
        raise IndexError(f"qubit {i} out of range")
    b = np.arange(2**state.n_qubits)
    z = 1 - 2 * ((b >> i) & 1)
    return float(np.dot(state.probabilities(), z))


def magnetization_from_probabilities(probs: np.ndarray, n_qubits: int) -> float:
    """Mean sigma_z over qubits for an outcome distribution over basis states."""
    return float(np.dot(probs, z_signs(n_qubits).mean(axis=0)))


def average_magnetization(state: StateVector) -> float:
    return magnetization_from_probabilities(state.probabilities(), state.n_qubits)


def run_statevector(circuit: Circuit, max_qubits: int = MAX_DENSE_QUBITS) -> tuple[StateVector, np.ndarray]:
    """Apply every unitary gate to the all-up register; return the state and outcome probabilities."""
    n = circuit.n_qubits
    amps = init_all_up(n, max_qubits).amplitudes
    for g in circuit.unitary_gates:
        amps = apply_gate_array(amps, g, n)
    state = StateVector(n, amps)
    return state, state.probabilities()
