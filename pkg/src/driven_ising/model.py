"""Driven Ising chain: parameters and dense Hamiltonians.

Units are eV for energies, fs for times and THz for frequencies, so a phase
accumulated by energy ``E`` over ``dt`` is ``E * dt / HBAR``.

Basis convention: qubit ``i`` is bit ``i`` of the basis-state index, and bit
value 0 is spin up (sigma_z = +1). The chain has open boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Reduced Planck constant in eV*fs.
HBAR = 0.6582119569

#: Largest chain handled by dense 2^N matrices unless overridden.
MAX_DENSE_QUBITS = 12

DEFAULT_J_Z = 0.01
DEFAULT_F_PH = 4.8
DEFAULT_DT = 3.0
DEFAULT_N_STEPS = 40


class DimensionError(ValueError):
    """Raised when a dense representation would exceed the configured size."""


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR


@dataclass(frozen=True)
class SpinChainParams:
    """Physical and discretization parameters of the driven chain.

    ``eps_ph`` is the drive amplitude in eV; use :meth:`from_ratio` to give it
    relative to ``|j_z|``. A negative ``j_z`` gives an antiferromagnetic chain.
    """

    n_qubits: int
    j_z: float = DEFAULT_J_Z
    eps_ph: float = DEFAULT_J_Z
    f_ph: float = DEFAULT_F_PH
    dt: float = DEFAULT_DT
    n_steps: int = DEFAULT_N_STEPS

    def __post_init__(self):
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be an integer >= 1, got {self.n_qubits}")
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.f_ph >= 0:
            raise ValueError(f"f_ph must be >= 0, got {self.f_ph}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 0:
            raise ValueError(f"n_steps must be an integer >= 0, got {self.n_steps}")
        for name in ("j_z", "eps_ph", "f_ph", "dt"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def from_ratio(cls, n_qubits: int, eps_ratio: float, j_z: float = DEFAULT_J_Z, **kw) -> "SpinChainParams":
        return cls(n_qubits=n_qubits, j_z=j_z, eps_ph=eps_ratio * abs(j_z), **kw)

    @property
    def omega_ph(self) -> float:
        """Angular drive frequency in rad/fs."""
        return 2.0 * math.pi * self.f_ph * 1e-3

    @property
    def horizon(self) -> float:
        return self.n_steps * self.dt

    def times(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.dt


def transverse_field(params: SpinChainParams, t: float) -> float:
    """Instantaneous field strength ``eps_ph * cos(omega_ph * t)`` in eV."""
    return params.eps_ph * math.cos(params.omega_ph * t)


def check_dense_size(n_qubits: int, max_qubits: int | None) -> None:
    limit = MAX_DENSE_QUBITS if max_qubits is None else max_qubits
    if n_qubits > limit:
        raise DimensionError(f"{n_qubits} qubits exceeds dense maximum of {limit}")


def z_signs(n_qubits: int) -> np.ndarray:
    """Array ``z[i, b]`` of sigma_z eigenvalues (+1/-1) of qubit i in basis state b."""
    b = np.arange(2**n_qubits)
    return np.array([1 - 2 * ((b >> i) & 1) for i in range(n_qubits)], dtype=float)


def bond_diagonal(n_qubits: int) -> np.ndarray:
    """Diagonal of ``sum_i Z_i Z_{i+1}`` over the open chain."""
    z = z_signs(n_qubits)
    return np.sum(z[:-1] * z[1:], axis=0) if n_qubits > 1 else np.zeros(2**n_qubits)


def x_sum(n_qubits: int, max_qubits: int | None = None) -> np.ndarray:
    """Dense ``sum_i X_i``."""
    check_dense_size(n_qubits, max_qubits)
    dim = 2**n_qubits
    b = np.arange(dim)
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(n_qubits):
        out[b ^ (1 << i), b] += 1.0
    return out


def global_flip(n_qubits: int) -> np.ndarray:
    """Dense product of X on every qubit."""
    dim = 2**n_qubits
    b = np.arange(dim)
    out = np.zeros((dim, dim), dtype=complex)
    out[b ^ (dim - 1), b] = 1.0
    return out


def build_hz(params: SpinChainParams, max_qubits: int | None = None) -> np.ndarray:
    check_dense_size(params.n_qubits, max_qubits)
    return np.diag(-params.j_z * bond_diagonal(params.n_qubits)).astype(complex)


def build_hx(params: SpinChainParams, t: float, max_qubits: int | None = None) -> np.ndarray:
    return -transverse_field(params, t) * x_sum(params.n_qubits, max_qubits)


def build_h(params: SpinChainParams, t: float, max_qubits: int | None = None) -> np.ndarray:
    """Full Hamiltonian H(t) = H_z + H_x(t) in eV."""
    return build_hz(params, max_qubits) + build_hx(params, t, max_qubits)


def expm_hermitian(h: np.ndarray, tau: float) -> np.ndarray:
    """``exp(-i h tau / HBAR)`` for Hermitian ``h`` via eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * tau / HBAR)) @ v.conj().T
