"""Noisy density-matrix backend.

After each gate's unitary, the touched qubits get a depolarizing channel and
then thermal relaxation for the gate's duration. Readout error is applied
to the final outcome distribution, never to the state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..compiler import Circuit, Gate, gate_matrix
from ..model import DimensionError
from ._tensor import apply_on_axes, qubit_axis
from .channels import (
    ChannelError,
    apply_kraus_tensor,
    depolarizing_2q_kraus,
    depolarizing_kraus,
    is_trace_preserving,
    readout_adjust,
    thermal_relaxation_kraus,
)
from .noise import NoiseProfile
from .statevector import StateVector

MAX_DENSITY_QUBITS = 8


@dataclass(frozen=True)
class DensityMatrix:
    n_qubits: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        dim = 2**self.n_qubits
        if m.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {m.shape}")
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        a = state.amplitudes
        return cls(state.n_qubits, np.outer(a, a.conj()))

    def probabilities(self) -> np.ndarray:
        p = np.clip(self.entries.diagonal().real, 0.0, None)
        return p / p.sum()

    def trace(self) -> float:
        return float(self.entries.trace().real)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.entries + self.entries.conj().T))[0])


def _as_tensor(rho: DensityMatrix) -> np.ndarray:
    return rho.entries.reshape((2,) * (2 * rho.n_qubits))


def apply_channel(rho: DensityMatrix, kraus: Sequence[np.ndarray], qubits: Sequence[int]) -> DensityMatrix:
    """``rho -> sum_k K rho K^dag`` on the given qubits; rejects non-trace-preserving sets."""
    kraus = [np.asarray(k, dtype=complex) for k in kraus]
    dim = 2 ** len(qubits)
    if not kraus or any(k.shape != (dim, dim) for k in kraus):
        raise ChannelError(f"Kraus operators must be {dim}x{dim}")
    if not is_trace_preserving(kraus):
        raise ChannelError("Kraus operators do not satisfy sum K^dag K = I")
    if len(set(qubits)) != len(qubits) or not all(0 <= q < rho.n_qubits for q in qubits):
        raise ChannelError(f"invalid qubits {list(qubits)}")
    n = rho.n_qubits
    out = apply_kraus_tensor(_as_tensor(rho), kraus, qubits, n)
    return DensityMatrix(n, out.reshape(2**n, 2**n))


def _unitary(rho_t: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    u = gate_matrix(gate)
    ket = [qubit_axis(q, n) for q in gate.qubits]
    rho_t = apply_on_axes(rho_t, u, ket)
    return apply_on_axes(rho_t, u.conj(), [a + n for a in ket])


class _NoiseCache:
    def __init__(self, noise: NoiseProfile):
        self.depol = {1: depolarizing_kraus(noise.depol_1q), 2: depolarizing_2q_kraus(noise.depol_2q)}
        self.depol_on = {1: noise.depol_1q > 0, 2: noise.depol_2q > 0}
        self.duration = {1: noise.dur_1q, 2: noise.dur_2q}
        self.relax = {
            k: thermal_relaxation_kraus(d, noise.t1, noise.t2) for k, d in self.duration.items()
        }
        self.relax_on = {k: noise.has_decoherence and d > 0 for k, d in self.duration.items()}


def run_noisy(
    circuit: Circuit,
    noise: NoiseProfile,
    *,
    idle_decoherence: bool = False,
    max_qubits: int = MAX_DENSITY_QUBITS,
    monitor: Callable[[DensityMatrix], None] | None = None,
) -> tuple[DensityMatrix, np.ndarray]:
    """Evolve the all-up register through ``circuit`` under ``noise``.

    Returns the final density matrix and the readout-adjusted outcome
    distribution. ``monitor`` is called with the state after every channel.
    With ``idle_decoherence`` the qubits a gate does not touch also relax
    for that gate's duration.
    """
    n = circuit.n_qubits
    if n > max_qubits:
        raise DimensionError(f"{n} qubits exceeds density-matrix maximum of {max_qubits}")
    if not isinstance(noise, NoiseProfile):
        raise TypeError("noise must be a NoiseProfile")
    p01, p10 = noise.readout_pairs(n)
    cache = _NoiseCache(noise)
    dim = 2**n

    rho_t = np.zeros((dim, dim), dtype=complex)
    rho_t[0, 0] = 1.0
    rho_t = rho_t.reshape((2,) * (2 * n))

    def emit():
        if monitor is not None:
            monitor(DensityMatrix(n, rho_t.reshape(dim, dim)))

    for g in circuit.unitary_gates:
        k = len(g.qubits)
        rho_t = _unitary(rho_t, g, n)
        if cache.depol_on[k]:
            rho_t = apply_kraus_tensor(rho_t, cache.depol[k], g.qubits, n)
            emit()
        if cache.relax_on[k]:
            for q in g.qubits:
                rho_t = apply_kraus_tensor(rho_t, cache.relax[k], [q], n)
            emit()
            if idle_decoherence:
                for q in range(n):
                    if q not in g.qubits:
                        rho_t = apply_kraus_tensor(rho_t, cache.relax[k], [q], n)
                emit()

    rho = DensityMatrix(n, rho_t.reshape(dim, dim))
    return rho, readout_adjust(rho.probabilities(), p01, p10)
