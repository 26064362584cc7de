"""OpenQASM 2.0 and Quil text for native-gate circuits."""

from __future__ import annotations

import math

from ..compiler import NATIVE_KINDS, Circuit, CircuitError, GateKind


def normalize_angle(theta: float) -> float:
    """Map to (-pi, pi]; changes at most the global phase of a rotation."""
    r = math.remainder(theta, 2 * math.pi)
    if r <= -math.pi:
        r = math.pi
    return r + 0.0  # drop negative zero


def format_angle(theta: float) -> str:
    return f"{normalize_angle(theta):.17g}"


def _require_native(circuit: Circuit) -> None:
    bad = sorted({g.kind.value for g in circuit.gates if g.kind not in NATIVE_KINDS})
    if bad:
        raise CircuitError(f"circuit must be lowered to native gates before emission; found {bad}")


def emit_qasm(circuit: Circuit) -> str:
    _require_native(circuit)
    n = circuit.n_qubits
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{n}];", f"creg c[{n}];"]
    for g in circuit.gates:
        if g.kind is GateKind.RX:
            lines.append(f"rx({format_angle(g.angle)}) q[{g.qubits[0]}];")
        elif g.kind is GateKind.RZ:
            lines.append(f"rz({format_angle(g.angle)}) q[{g.qubits[0]}];")
        elif g.kind is GateKind.CNOT:
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        else:
            q = g.qubits[0]
            lines.append(f"measure q[{q}] -> c[{q}];")
    return "\n".join(lines) + "\n"


def emit_quil(circuit: Circuit) -> str:
    _require_native(circuit)
    lines = [f"DECLARE ro BIT[{circuit.n_qubits}]"]
    for g in circuit.gates:
        if g.kind is GateKind.RX:
            lines.append(f"RX({format_angle(g.angle)}) {g.qubits[0]}")
        elif g.kind is GateKind.RZ:
            lines.append(f"RZ({format_angle(g.angle)}) {g.qubits[0]}")
        elif g.kind is GateKind.CNOT:
            lines.append(f"CNOT {g.qubits[0]} {g.qubits[1]}")
        else:
            q = g.qubits[0]
            lines.append(f"MEASURE {q} ro[{q}]")
    return "\n".join(lines) + "\n"
