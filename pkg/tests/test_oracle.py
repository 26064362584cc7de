import math

import numpy as np
import pytest
import scipy.linalg

from driven_ising.backends.statevector import average_magnetization
from driven_ising.model import HBAR, SpinChainParams, build_h, global_flip
from driven_ising.oracle import ConvergenceError, evolve_exact, magnetization_trace_exact, _trace


def test_zero_field_stays_up():
    p = SpinChainParams(3, eps_ph=0.0)
    s = evolve_exact(p, 57.0)
    assert abs(abs(s.amplitudes[0]) - 1) < 1e-12
    trace = magnetization_trace_exact(p)
    np.testing.assert_allclose(trace[:, 1], 1.0, atol=1e-12)


def test_single_qubit_rabi():
    p = SpinChainParams(1, eps_ph=0.01, f_ph=0.0)
    s = evolve_exact(p, 51.7)
    assert 2 * 0.01 * 51.7 / HBAR == pytest.approx(1.5709, abs=1e-4)
    assert average_magnetization(s) == pytest.approx(math.cos(2 * 0.01 * 51.7 / HBAR), abs=1e-12)
    assert abs(average_magnetization(s)) < 1e-3


def test_two_qubit_self_convergence():
    p = SpinChainParams.from_ratio(2, 1.0, j_z=0.01)
    a = average_magnetization(evolve_exact(p, 120.0, substeps_per_dt=256))
    b = average_magnetization(evolve_exact(p, 120.0, substeps_per_dt=512))
    assert abs(a - b) < 1e-8


def test_time_independent_limit_matches_expm():
    p = SpinChainParams(3, j_z=0.012, eps_ph=0.02, f_ph=0.0)
    s = evolve_exact(p, 40.0, substeps_per_dt=2)
    psi0 = np.zeros(8, dtype=complex)
    psi0[0] = 1
    ref = scipy.linalg.expm(-1j * build_h(p, 0.0) * 40.0 / HBAR) @ psi0
    np.testing.assert_allclose(s.amplitudes, ref, atol=1e-12)


def test_driven_against_fine_expm_product():
    p = SpinChainParams.from_ratio(2, 5.0, n_steps=4)
    s = evolve_exact(p, p.horizon)
    # independent route: left-Riemann product with scipy expm on a much finer grid
    m = 12_000
    d = p.horizon / m
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1
    for k in range(m):
        psi = scipy.linalg.expm(-1j * build_h(p, (k + 0.5) * d) * d / HBAR) @ psi
    assert abs(abs(np.vdot(psi, s.amplitudes)) - 1) < 1e-10


def test_non_grid_time():
    p = SpinChainParams.from_ratio(2, 1.0, dt=3.0)
    a = evolve_exact(p, 10.0, substeps_per_dt=256)
    b = evolve_exact(p, 10.0, substeps_per_dt=512)
    assert abs(average_magnetization(a) - average_magnetization(b)) < 1e-9


def test_bad_arguments():
    p = SpinChainParams(2)
    with pytest.raises(ValueError):
        evolve_exact(p, 1.0, substeps_per_dt=0)
    with pytest.raises(ValueError):
        evolve_exact(p, -1.0)


class TestTrace:
    def test_first_point(self):
        trace = magnetization_trace_exact(SpinChainParams.from_ratio(3, 0.5, n_steps=5))
        assert tuple(trace[0]) == (0.0, 1.0)
        np.testing.assert_allclose(trace[:, 0], [0, 3, 6, 9, 12, 15])

    def test_matches_evolve_exact(self):
        p = SpinChainParams.from_ratio(2, 1.0, n_steps=10)
        trace = magnetization_trace_exact(p)
        assert trace[7, 1] == pytest.approx(average_magnetization(evolve_exact(p, 21.0, substeps_per_dt=512)), abs=1e-8)

    def test_field_strength_ordering(self):
        mins = [magnetization_trace_exact(SpinChainParams.from_ratio(2, r))[:, 1].min() for r in (0.2, 0.5, 1.0)]
        assert mins[0] > mins[1] > mins[2]

    def test_size_effect(self):
        mins = [magnetization_trace_exact(SpinChainParams.from_ratio(n, 0.5))[:, 1].min() for n in (2, 3, 4)]
        assert mins[0] < mins[1] < mins[2]

    def test_self_convergence_monotone(self):
        p = SpinChainParams.from_ratio(3, 5.0)
        traces = {s: _trace(p, s, None) for s in (4, 8, 16, 32)}
        diffs = [np.max(np.abs(traces[2 * s] - traces[s])) for s in (4, 8, 16)]
        assert diffs[0] > diffs[1] > diffs[2]
        # midpoint rule: each doubling cuts the difference about fourfold
        assert 3.0 < diffs[0] / diffs[1] < 5.0

    def test_non_convergence_reported(self):
        with pytest.raises(ConvergenceError):
            magnetization_trace_exact(SpinChainParams.from_ratio(2, 5.0), substeps_per_dt=1, tol=1e-30, max_doublings=2)

    def test_flip_parity_conserved(self):
        p = SpinChainParams.from_ratio(3, 1.0)
        flip = global_flip(3)
        vals = [np.vdot(s.amplitudes, flip @ s.amplitudes).real for s in (evolve_exact(p, t) for t in (0.0, 30.0, 90.0))]
        np.testing.assert_allclose(vals, vals[0], atol=1e-8)

    def test_antiferromagnetic_chain_same_magnetization(self):
        # Z on every other site maps J_z -> -J_z and H_x -> -H_x; with real H, a real
        # initial state and a real observable, H -> -H leaves mz(t) unchanged.
        ferro = magnetization_trace_exact(SpinChainParams.from_ratio(3, 1.0, j_z=0.01))[:, 1]
        anti = magnetization_trace_exact(SpinChainParams.from_ratio(3, 1.0, j_z=-0.01))[:, 1]
        np.testing.assert_allclose(anti, ferro, atol=1e-8)
