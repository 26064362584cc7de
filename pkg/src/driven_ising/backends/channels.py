"""Kraus channels and readout confusion."""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from ._tensor import apply_on_axes, qubit_axis

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (_I, _X, _Y, _Z)


class ChannelError(ValueError):
    pass


def _check_prob(p: float, name: str) -> None:
    if not 0.0 <= p <= 1.0:
        raise ChannelError(f"{name} must be in [0, 1], got {p}")


def depolarizing_kraus(p: float) -> list[np.ndarray]:
    """rho -> (1 - p) rho + p I/2."""
    _check_prob(p, "p")
    return [math.sqrt(1 - 3 * p / 4) * _I] + [math.sqrt(p / 4) * P for P in PAULIS[1:]]


def depolarizing_2q_kraus(p: float) -> list[np.ndarray]:
    """rho -> (1 - p) rho + p I/4, as a twirl over all 16 two-qubit Paulis."""
    _check_prob(p, "p")
    ops = []
    for a, b in itertools.product(range(4), repeat=2):
        w = 1 - 15 * p / 16 if a == b == 0 else p / 16
        ops.append(math.sqrt(w) * np.kron(PAULIS[a], PAULIS[b]))
    return ops


def amplitude_damping_kraus(gamma: float) -> list[np.ndarray]:
    _check_prob(gamma, "gamma")
    return [
        np.array([[1, 0], [0, math.sqrt(1 - gamma)]], dtype=complex),
        np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=complex),
    ]


def phase_damping_kraus(lam: float) -> list[np.ndarray]:
    """Shrinks off-diagonal elements by ``sqrt(1 - lam)``."""
    _check_prob(lam, "lambda")
    return [
        np.array([[1, 0], [0, math.sqrt(1 - lam)]], dtype=complex),
        np.array([[0, 0], [0, math.sqrt(lam)]], dtype=complex),
    ]


def thermal_relaxation_kraus(duration: float, t1: float | None, t2: float | None) -> list[np.ndarray]:
    """Amplitude damping from T1 composed with pure dephasing making up the rest of T2.

    A ``t1`` or ``t2`` of None (or <= 0) switches that process off. With both
    on, coherences decay as ``exp(-duration / t2)`` overall.
    """
    t1_on = t1 is not None and t1 > 0 and math.isfinite(t1)
    t2_on = t2 is not None and t2 > 0 and math.isfinite(t2)
    gamma1 = 1.0 - math.exp(-duration / t1) if t1_on else 0.0
    rate_phi = (1.0 / t2 if t2_on else 0.0) - (0.5 / t1 if t1_on and t2_on else 0.0)
    rate_phi = max(rate_phi, 0.0)
    lam = 1.0 - math.exp(-2.0 * duration * rate_phi)
    ad = amplitude_damping_kraus(gamma1)
    pd = phase_damping_kraus(lam)
    return [b @ a for a in ad for b in pd]


def is_trace_preserving(kraus: Sequence[np.ndarray], atol: float = 1e-10) -> bool:
    dim = kraus[0].shape[0]
    total = sum(k.conj().T @ k for k in kraus)
    return bool(np.allclose(total, np.eye(dim), atol=atol, rtol=0))


def apply_kraus_tensor(rho_t: np.ndarray, kraus: Sequence[np.ndarray], qubits: Sequence[int], n: int) -> np.ndarray:
    """Unchecked ``sum_k K rho K^dag`` on a density tensor of shape ``(2,) * 2n``."""
    ket = [qubit_axis(q, n) for q in qubits]
    bra = [a + n for a in ket]
    out = None
    for k in kraus:
        term = apply_on_axes(apply_on_axes(rho_t, k, ket), k.conj(), bra)
        out = term if out is None else out + term
    return out


def confusion_matrix(p01: float, p10: float) -> np.ndarray:
    """Column = true bit, row = reported bit."""
    return np.array([[1 - p01, p10], [p01, 1 - p10]])


def readout_adjust(probabilities: np.ndarray, p01: Sequence[float], p10: Sequence[float]) -> np.ndarray:
    """Push a basis-state distribution through independent per-qubit readout errors."""
    probs = np.asarray(probabilities, dtype=float)
    n = int(round(math.log2(probs.size)))
    if 2**n != probs.size:
        raise ValueError("distribution length must be a power of two")
    if len(p01) != n or len(p10) != n:
        raise ValueError(f"need {n} readout pairs, got {len(p01)}/{len(p10)}")
    t = probs.reshape((2,) * n)
    for q in range(n):
        t = apply_on_axes(t, confusion_matrix(p01[q], p10[q]), [qubit_axis(q, n)])
    return t.reshape(-1)
