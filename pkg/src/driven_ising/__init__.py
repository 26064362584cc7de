"""Trotterized dynamics of a phonon-driven Ising spin chain on simulated quantum backends."""

from .compiler import Circuit, Gate, GateKind, compile_circuit, compile_step, gate_matrix, lower_to_native
from .model import HBAR, SpinChainParams, build_h, build_hz, transverse_field
from .oracle import evolve_exact, magnetization_trace_exact

__version__ = "0.1.0"
