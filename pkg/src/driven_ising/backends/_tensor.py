"""Applying small operators to qubit axes of a reshaped state tensor.

A length-2^N vector reshaped C-order to ``(2,) * N`` puts qubit ``q`` on
axis ``N - 1 - q`` because qubit ``q`` is bit ``q`` of the flat index.
"""

from __future__ import annotations

import numpy as np


def qubit_axis(q: int, n_qubits: int) -> int:
    return n_qubits - 1 - q


def apply_on_axes(tensor: np.ndarray, matrix: np.ndarray, axes: list[int]) -> np.ndarray:
    """Contract a ``2^k x 2^k`` matrix into ``k`` axes of ``tensor``.

    The matrix's first tensor factor acts on ``axes[0]``.
    """
    k = len(axes)
    m = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(m, tensor, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)
