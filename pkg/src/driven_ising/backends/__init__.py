from .channels import (
    ChannelError,
    amplitude_damping_kraus,
    confusion_matrix,
    depolarizing_2q_kraus,
    depolarizing_kraus,
    phase_damping_kraus,
    readout_adjust,
    thermal_relaxation_kraus,
)
from .density import MAX_DENSITY_QUBITS, DensityMatrix, apply_channel, run_noisy
from .noise import IDEAL, NISQ_2019, PROFILES, NoiseProfile, NoiseProfileError, symmetric_readout
from .statevector import (
    StateVector,
    apply_gate,
    average_magnetization,
    expectation_sigma_z,
    init_all_up,
    magnetization_from_probabilities,
    run_statevector,
)
