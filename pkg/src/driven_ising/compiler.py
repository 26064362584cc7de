"""Gate-level compilation of the Trotterized propagator.

Each time step ``j`` becomes a layer of RZZ gates on every bond followed by
a layer of RX gates on every qubit, with the field sampled at the midpoint
``(j + 1/2) * dt``. A circuit for ``n`` steps always starts from the
all-up register and ends with a measurement of every qubit.

Gate conventions::

    RX(theta)  = exp(-i theta/2 X)
    RZ(theta)  = exp(-i theta/2 Z)
    RZZ(theta) = exp(-i theta/2 Z(x)Z)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .model import HBAR, SpinChainParams, transverse_field


class GateKind(str, enum.Enum):
    RX = "RX"
    RZ = "RZ"
    RZZ = "RZZ"
    CNOT = "CNOT"
    MEASURE = "MEASURE"

    @property
    def arity(self) -> int:
        return 2 if self in (GateKind.RZZ, GateKind.CNOT) else 1

    @property
    def has_angle(self) -> bool:
        return self in (GateKind.RX, GateKind.RZ, GateKind.RZZ)


UNITARY_KINDS = frozenset({GateKind.RX, GateKind.RZ, GateKind.RZZ, GateKind.CNOT})
NATIVE_KINDS = frozenset({GateKind.RX, GateKind.RZ, GateKind.CNOT, GateKind.MEASURE})


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) != self.kind.arity:
            raise CircuitError(f"{self.kind.value} acts on {self.kind.arity} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits) or min(self.qubits) < 0:
            raise CircuitError(f"invalid qubit indices {self.qubits}")
        if self.kind.has_angle:
            if self.angle is None or not math.isfinite(self.angle):
                raise CircuitError(f"{self.kind.value} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise CircuitError(f"{self.kind.value} takes no angle")

    @property
    def is_unitary(self) -> bool:
        return self.kind in UNITARY_KINDS


def rx(q: int, theta: float) -> Gate:
    return Gate(GateKind.RX, (q,), theta)


def rz(q: int, theta: float) -> Gate:
    return Gate(GateKind.RZ, (q,), theta)


def rzz(a: int, b: int, theta: float) -> Gate:
    return Gate(GateKind.RZZ, (a, b), theta)


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def measure(q: int) -> Gate:
    return Gate(GateKind.MEASURE, (q,))


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        seen_measure = False
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise CircuitError(f"gate {g} out of range for {self.n_qubits} qubits")
            if g.kind is GateKind.MEASURE:
                seen_measure = True
            elif seen_measure:
                raise CircuitError("unitary gate after measurement")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    @property
    def unitary_gates(self) -> tuple[Gate, ...]:
        return tuple(g for g in self.gates if g.is_unitary)

    def count(self, kind: GateKind | str) -> int:
        kind = GateKind(kind)
        return sum(g.kind is kind for g in self.gates)


def zz_angle(params: SpinChainParams) -> float:
    return -2.0 * params.j_z * params.dt / HBAR


def x_angle(params: SpinChainParams, j: int) -> float:
    return -2.0 * transverse_field(params, (j + 0.5) * params.dt) * params.dt / HBAR


def compile_step(params: SpinChainParams, j: int, elide_zero: bool = False) -> list[Gate]:
    """Gates for one Trotter factor, in application order (Z part, then X part)."""
    if j < 0:
        raise ValueError("step index must be >= 0")
    n = params.n_qubits
    theta_zz = zz_angle(params)
    theta_x = x_angle(params, j)
    gates = []
    if not (elide_zero and theta_zz == 0.0):
        gates += [rzz(i, i + 1, theta_zz) for i in range(n - 1)]
    if not (elide_zero and theta_x == 0.0):
        gates += [rx(i, theta_x) for i in range(n)]
    return gates


def compile_circuit(params: SpinChainParams, n: int, elide_zero: bool = False) -> Circuit:
    """Fresh circuit evolving the all-up register through ``n`` steps, then measuring."""
    if n < 0:
        raise ValueError("number of steps must be >= 0")
    gates = []
    for j in range(n):
        gates += compile_step(params, j, elide_zero=elide_zero)
    gates += [measure(i) for i in range(params.n_qubits)]
    return Circuit(params.n_qubits, gates, {"step": n, "params": params})


def lower_to_native(circuit: Circuit) -> Circuit:
    """Rewrite every RZZ(theta) on (a, b) as CNOT(a, b) RZ(theta) on b CNOT(a, b)."""
    out = []
    for g in circuit.gates:
        if g.kind is GateKind.RZZ:
            a, b = g.qubits
            out += [cnot(a, b), rz(b, g.angle), cnot(a, b)]
        else:
            out.append(g)
    return Circuit(circuit.n_qubits, out, dict(circuit.metadata))


_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# basis |q0 q1> with q0 the control, ordered 00, 01, 10, 11
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def gate_matrix(gate: Gate) -> np.ndarray:
    """Unitary of ``gate``; two-qubit matrices use basis ``|q0 q1>`` with ``q0 = gate.qubits[0]``."""
    kind, th = gate.kind, gate.angle
    if kind is GateKind.RX:
        return math.cos(th / 2) * _I2 - 1j * math.sin(th / 2) * _X
    if kind is GateKind.RZ:
        return np.diag([np.exp(-0.5j * th), np.exp(0.5j * th)])
    if kind is GateKind.RZZ:
        a, b = np.exp(-0.5j * th), np.exp(0.5j * th)
        return np.diag([a, b, b, a])
    if kind is GateKind.CNOT:
        return _CNOT.copy()
    raise CircuitError("MEASURE has no matrix")
