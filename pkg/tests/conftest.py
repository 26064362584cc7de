import numpy as np
import pytest
from functools import reduce

from driven_ising.compiler import Circuit, Gate, gate_matrix, measure
from driven_ising.model import SpinChainParams

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def embed(op1q: np.ndarray, q: int, n: int) -> np.ndarray:
    """Kronecker embedding with qubit q as bit q of the basis index (qubit n-1 leftmost)."""
    factors = [op1q if k == q else I2 for k in reversed(range(n))]
    return reduce(np.kron, factors)


def embed_2q(op: np.ndarray, a: int, b: int, n: int) -> np.ndarray:
    """Embed a 4x4 operator in basis |q_a q_b> by brute-force matrix elements."""
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        ia, ib = (col >> a) & 1, (col >> b) & 1
        for ra in range(2):
            for rb in range(2):
                row = col & ~(1 << a) & ~(1 << b) | (ra << a) | (rb << b)
                out[row, col] += op[2 * ra + rb, 2 * ia + ib]
    return out


def phase_insensitive_distance(u: np.ndarray, v: np.ndarray) -> float:
    overlap = np.vdot(u, v)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(u * phase - v))


@pytest.fixture
def default_params():
    def make(n_qubits=2, eps_ratio=1.0, **kw):
        return SpinChainParams.from_ratio(n_qubits, eps_ratio, **kw)

    return make


def circuit_unitary(gates, n):
    u = np.eye(2**n, dtype=complex)
    for g in gates:
        m = gate_matrix(g)
        full = embed(m, g.qubits[0], n) if len(g.qubits) == 1 else embed_2q(m, *g.qubits, n)
        u = full @ u
    return u


def random_circuit(rng, n, n_gates, native=False):
    kinds = ["RX", "RZ"] + ([] if n < 2 else ["CNOT"] if native else ["CNOT", "RZZ"])
    gates = []
    for _ in range(n_gates):
        k = kinds[rng.integers(len(kinds))]
        if k in ("RZZ", "CNOT"):
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate(k, (a, b), None if k == "CNOT" else rng.uniform(-np.pi, np.pi)))
        else:
            gates.append(Gate(k, (rng.integers(n),), rng.uniform(-np.pi, np.pi)))
    return Circuit(n, gates + [measure(q) for q in range(n)])
