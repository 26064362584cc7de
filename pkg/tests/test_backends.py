import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import circuit_unitary, embed, random_circuit
from driven_ising.backends import (
    IDEAL,
    NISQ_2019,
    ChannelError,
    DensityMatrix,
    NoiseProfile,
    NoiseProfileError,
    StateVector,
    amplitude_damping_kraus,
    apply_channel,
    apply_gate,
    average_magnetization,
    depolarizing_2q_kraus,
    depolarizing_kraus,
    expectation_sigma_z,
    init_all_up,
    phase_damping_kraus,
    readout_adjust,
    run_noisy,
    run_statevector,
    symmetric_readout,
    thermal_relaxation_kraus,
)
from driven_ising.backends.density import MAX_DENSITY_QUBITS
from driven_ising.compiler import Circuit, CircuitError, cnot, compile_circuit, lower_to_native, measure, rx, rz, rzz
from driven_ising.model import DimensionError, SpinChainParams


class TestStateVector:
    @pytest.mark.parametrize("n,expected", [(1, [1, 0]), (2, [1, 0, 0, 0])])
    def test_init(self, n, expected):
        np.testing.assert_array_equal(init_all_up(n).amplitudes, expected)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
    def test_init_magnetization(self, n):
        assert average_magnetization(init_all_up(n)) == 1.0

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            StateVector(1, np.array([1.0, 1.0]))

    def test_rx_pi_flip(self):
        s = apply_gate(init_all_up(1), rx(0, math.pi))
        np.testing.assert_allclose(s.amplitudes, [0, -1j], atol=1e-15)
        assert expectation_sigma_z(s, 0) == pytest.approx(-1)

    def test_rx_half_pi(self):
        s = apply_gate(init_all_up(1), rx(0, math.pi / 2))
        np.testing.assert_allclose(s.amplitudes, np.array([1, -1j]) / math.sqrt(2), atol=1e-15)
        assert abs(expectation_sigma_z(s, 0)) < 1e-15

    def test_rzz_on_basis_state(self):
        s0 = init_all_up(2)
        s = apply_gate(s0, rzz(0, 1, 0.9))
        np.testing.assert_allclose(s.probabilities(), s0.probabilities(), atol=1e-15)
        assert s.amplitudes[0] == pytest.approx(np.exp(-0.45j))

    def test_per_qubit_expectation(self):
        s = apply_gate(init_all_up(2), rx(0, math.pi))
        assert expectation_sigma_z(s, 0) == pytest.approx(-1)
        assert expectation_sigma_z(s, 1) == pytest.approx(1)
        assert abs(average_magnetization(s)) < 1e-15

    def test_superposition(self):
        s = StateVector(1, np.array([1, 1]) / math.sqrt(2))
        assert abs(expectation_sigma_z(s, 0)) < 1e-15

    def test_measure_rejected(self):
        with pytest.raises(CircuitError):
            apply_gate(init_all_up(1), measure(0))

    def test_bad_index(self):
        with pytest.raises(CircuitError):
            apply_gate(init_all_up(2), rx(2, 0.1))
        with pytest.raises(IndexError):
            expectation_sigma_z(init_all_up(2), 2)

    def test_cnot_semantics(self):
        # qubit 0 = bit 0: flip control 0 then CNOT(0 -> 2) sets bit 2
        s = apply_gate(apply_gate(init_all_up(3), rx(0, math.pi)), cnot(0, 2))
        assert np.argmax(s.probabilities()) == 0b101

    @pytest.mark.parametrize("seed", range(3))
    def test_matches_kron_reference(self, seed):
        rng = np.random.default_rng(seed)
        n = 3
        c = random_circuit(rng, n, 30)
        state, probs = run_statevector(c)
        ref = circuit_unitary(c.unitary_gates, n)[:, 0]
        np.testing.assert_allclose(state.amplitudes, ref, atol=1e-12)
        assert abs(probs.sum() - 1) < 1e-10

    def test_measurement_only_run(self):
        _, probs = run_statevector(compile_circuit(SpinChainParams(3), 0))
        assert probs[0] == 1.0

    def test_norm_conservation_long_circuit(self):
        c = random_circuit(np.random.default_rng(42), 6, 1000)
        state, _ = run_statevector(c)
        assert abs(np.linalg.norm(state.amplitudes) - 1) < 1e-9

    def test_strong_drive_flips_early(self):
        p = SpinChainParams.from_ratio(2, 5.0)
        mzs = [average_magnetization(run_statevector(compile_circuit(p, n))[0]) for n in range(11)]
        assert min(mzs) < 0

    def test_weak_drive_shallow_dip(self):
        p = SpinChainParams.from_ratio(2, 0.2)
        mzs = [average_magnetization(run_statevector(compile_circuit(p, n))[0]) for n in range(41)]
        assert min(mzs) > 0.9


class TestKraus:
    @pytest.mark.parametrize(
        "kraus",
        [depolarizing_kraus(0.3), depolarizing_2q_kraus(0.4), amplitude_damping_kraus(0.2),
         phase_damping_kraus(0.7), thermal_relaxation_kraus(300, 5e4, 6e4), thermal_relaxation_kraus(10, 20, None)],
    )
    def test_completeness(self, kraus):
        d = kraus[0].shape[0]
        np.testing.assert_allclose(sum(k.conj().T @ k for k in kraus), np.eye(d), atol=1e-12)

    def test_two_qubit_twirl_has_sixteen_terms(self):
        assert len(depolarizing_2q_kraus(0.1)) == 16

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_bad_probability(self, p):
        with pytest.raises(ChannelError):
            depolarizing_kraus(p)

    def test_thermal_relaxation_rates(self):
        t1, t2, dur = 50.0, 60.0, 7.0
        rho = np.array([[0.3, 0.4], [0.4, 0.7]], dtype=complex)
        out = sum(k @ rho @ k.conj().T for k in thermal_relaxation_kraus(dur, t1, t2))
        g1 = 1 - math.exp(-dur / t1)
        assert out[1, 1].real == pytest.approx(0.7 * (1 - g1), rel=1e-12)
        assert out[0, 1] == pytest.approx(0.4 * math.exp(-dur / t2), rel=1e-12)

    def test_t2_equal_2t1_is_pure_damping(self):
        a = thermal_relaxation_kraus(10.0, 40.0, 80.0)
        rho = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
        out = sum(k @ rho @ k.conj().T for k in a)
        assert out[0, 1] == pytest.approx(0.5 * math.exp(-10 / 80), rel=1e-12)


def dm(state):
    return DensityMatrix.from_state(state)


class TestApplyChannel:
    def test_identity(self):
        rho = dm(apply_gate(init_all_up(2), rx(1, 0.8)))
        out = apply_channel(rho, [np.eye(2)], [1])
        np.testing.assert_allclose(out.entries, rho.entries, atol=1e-15)

    @pytest.mark.parametrize("theta", [0.0, 0.4, math.pi / 2, 2.5])
    def test_full_depolarizing(self, theta):
        rho = dm(apply_gate(init_all_up(1), rx(0, theta)))
        out = apply_channel(rho, depolarizing_kraus(1.0), [0])
        np.testing.assert_allclose(out.entries, np.eye(2) / 2, atol=1e-15)

    def test_full_amplitude_damping(self):
        rho = DensityMatrix(1, np.diag([0.0, 1.0]))
        out = apply_channel(rho, amplitude_damping_kraus(1.0), [0])
        np.testing.assert_allclose(out.entries, np.diag([1.0, 0.0]), atol=1e-15)

    def test_rejects_non_cptp(self):
        with pytest.raises(ChannelError):
            apply_channel(dm(init_all_up(1)), [0.5 * np.eye(2)], [0])

    def test_rejects_wrong_shape(self):
        with pytest.raises(ChannelError):
            apply_channel(dm(init_all_up(2)), [np.eye(2)], [0, 1])

    def test_matches_kron_on_middle_qubit(self):
        rng = np.random.default_rng(1)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        rho = dm(StateVector(3, v / np.linalg.norm(v)))
        kraus = amplitude_damping_kraus(0.35)
        out = apply_channel(rho, kraus, [1])
        ref = sum(embed(k, 1, 3) @ rho.entries @ embed(k, 1, 3).conj().T for k in kraus)
        np.testing.assert_allclose(out.entries, ref, atol=1e-14)

    def test_two_qubit_depolarizing_full(self):
        rho = dm(apply_gate(init_all_up(3), rx(0, 1.0)))
        out = apply_channel(rho, depolarizing_2q_kraus(1.0), [0, 2])
        # qubits 0 and 2 fully mixed, qubit 1 stays |0><0|
        p = out.entries.diagonal().real.reshape(2, 2, 2)  # axes: q2, q1, q0
        np.testing.assert_allclose(p[:, 0, :], 0.25, atol=1e-14)
        np.testing.assert_allclose(p[:, 1, :], 0.0, atol=1e-14)


class TestReadout:
    def test_identity(self):
        p = np.array([0.1, 0.2, 0.3, 0.4])
        np.testing.assert_array_equal(readout_adjust(p, [0, 0], [0, 0]), p)

    def test_single_qubit(self):
        np.testing.assert_allclose(readout_adjust([1.0, 0.0], [0.05], [0.0]), [0.95, 0.05], atol=1e-15)

    def test_two_qubit_against_kron(self):
        p01, p10 = [0.02, 0.07], [0.11, 0.04]
        probs = np.array([0.4, 0.1, 0.3, 0.2])
        # full confusion matrix; index bit 0 is qubit 0, so qubit 1 is the left Kronecker factor
        m = [np.array([[1 - p01[q], p10[q]], [p01[q], 1 - p10[q]]]) for q in range(2)]
        ref = np.kron(m[1], m[0]) @ probs
        out = readout_adjust(probs, p01, p10)
        np.testing.assert_allclose(out, ref, atol=1e-15)
        assert abs(out.sum() - 1) < 1e-12

    def test_brute_force_three_qubits(self):
        rng = np.random.default_rng(3)
        probs = rng.dirichlet(np.ones(8))
        p01, p10 = rng.uniform(0, 0.2, 3), rng.uniform(0, 0.2, 3)
        ref = np.zeros(8)
        for true, read in itertools.product(range(8), repeat=2):
            w = 1.0
            for q in range(3):
                t, r = (true >> q) & 1, (read >> q) & 1
                w *= [[1 - p01[q], p10[q]], [p01[q], 1 - p10[q]]][r][t]
            ref[read] += w * probs[true]
        np.testing.assert_allclose(readout_adjust(probs, p01, p10), ref, atol=1e-15)


class TestNoiseProfile:
    def test_defaults(self):
        assert NISQ_2019.p01 == 0.03 and NISQ_2019.depol_2q == 0.02 and NISQ_2019.t2 == 60_000.0
        assert IDEAL == NoiseProfile()

    @pytest.mark.parametrize(
        "kw", [dict(p01=1.5), dict(depol_1q=-0.1), dict(t1=10.0, t2=30.0), dict(dur_1q=-1.0), dict(p10=[0.1, 2.0])]
    )
    def test_invalid(self, kw):
        with pytest.raises(NoiseProfileError):
            NoiseProfile(**kw)

    def test_per_qubit_readout(self):
        prof = NoiseProfile(p01=[0.01, 0.02], p10=0.05)
        assert prof.readout_pairs(2) == ([0.01, 0.02], [0.05, 0.05])
        with pytest.raises(NoiseProfileError):
            prof.readout_pairs(3)

    def test_dict_round_trip(self):
        prof = NoiseProfile(p01=[0.01, 0.02], p10=0.05, t1=100.0)
        assert NoiseProfile.from_dict(prof.to_dict()) == prof


class TestRunNoisy:
    def test_zero_noise_matches_statevector(self):
        c = compile_circuit(SpinChainParams.from_ratio(3, 1.0), 5)
        _, p_sv = run_statevector(c)
        _, p_dm = run_noisy(c, IDEAL)
        assert 0.5 * np.abs(p_sv - p_dm).sum() < 1e-10

    def test_zero_durations_zero_times(self):
        prof = NoiseProfile(t1=0.0, t2=0.0)
        c = compile_circuit(SpinChainParams.from_ratio(2, 1.0), 3)
        _, p = run_noisy(c, prof)
        np.testing.assert_allclose(p, run_statevector(c)[1], atol=1e-12)

    def test_readout_bias_symmetric(self):
        for n in (1, 2, 4):
            _, p = run_noisy(compile_circuit(SpinChainParams(n), 0), symmetric_readout(0.05))
            from driven_ising.backends import magnetization_from_probabilities

            assert magnetization_from_probabilities(p, n) == pytest.approx(0.9, abs=1e-12)

    def test_readout_bias_asymmetric(self):
        from driven_ising.backends import magnetization_from_probabilities

        _, p = run_noisy(compile_circuit(SpinChainParams(3), 0), NoiseProfile(p01=0.02, p10=0.08))
        # all up: measured z = +1 with prob 0.98, -1 with prob 0.02
        assert magnetization_from_probabilities(p, 3) == pytest.approx(0.96, abs=1e-12)

    def test_pure_state_embedding(self):
        rng = np.random.default_rng(5)
        c = random_circuit(rng, 4, 40)
        state, _ = run_statevector(c)
        rho, _ = run_noisy(c, IDEAL)
        a = state.amplitudes
        np.testing.assert_allclose(rho.entries, np.outer(a, a.conj()), atol=1e-10)

    def test_cptp_invariants_nisq(self):
        seen = []

        def check(rho):
            seen.append(1)
            assert abs(rho.trace() - 1) < 1e-9
            assert rho.hermiticity_error() < 1e-9
            assert rho.min_eigenvalue() >= -1e-8

        c = lower_to_native(compile_circuit(SpinChainParams.from_ratio(3, 5.0), 4))
        run_noisy(c, NISQ_2019, monitor=check)
        assert len(seen) > 0

    def test_noise_reduces_purity(self):
        c = lower_to_native(compile_circuit(SpinChainParams.from_ratio(2, 1.0), 10))
        rho, _ = run_noisy(c, NISQ_2019)
        assert np.trace(rho.entries @ rho.entries).real < 0.99

    def test_idle_decoherence_adds_damping(self):
        prof = NoiseProfile(t1=1000.0, t2=1000.0, dur_1q=100.0)
        c = Circuit(2, [rx(0, math.pi), rx(1, math.pi), rz(0, 0.0), rz(0, 0.0), rz(0, 0.0)])
        _, p_busy = run_noisy(c, prof)
        _, p_idle = run_noisy(c, prof, idle_decoherence=True)
        # qubit 1 relaxes toward |0> only when idle decoherence is enabled
        assert p_idle[0b00] > p_busy[0b00]

    def test_dimension_cap(self):
        with pytest.raises(DimensionError):
            run_noisy(compile_circuit(SpinChainParams(9), 0), IDEAL)
        assert MAX_DENSITY_QUBITS == 8


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_noiseless_equivalence_property(seed, n):
    c = random_circuit(np.random.default_rng(seed), n, 20)
    _, p_sv = run_statevector(c)
    _, p_dm = run_noisy(c, IDEAL)
    assert 0.5 * np.abs(p_sv - p_dm).sum() < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 0.5))
def test_readout_monotonicity(p):
    from driven_ising.backends import magnetization_from_probabilities

    _, probs = run_noisy(compile_circuit(SpinChainParams(2), 0), symmetric_readout(p))
    assert magnetization_from_probabilities(probs, 2) == pytest.approx(1 - 2 * p, abs=1e-12)
