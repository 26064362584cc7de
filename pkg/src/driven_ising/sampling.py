"""Finite-shot measurement and multi-run aggregation.

Randomness comes from NumPy's PCG64 bit generator. Each sampler's stream is
``PCG64(SeedSequence(master_seed, spawn_key=(combo_key, run, step)))``, and
uniforms are formed directly from the raw 64-bit outputs as
``(raw >> 11) * 2**-53``. So records depend only on PCG64 and SeedSequence,
which NumPy keeps stable across versions and platforms, and not on any
higher-level Generator method.

Outcome strings list qubit 0 first: character ``i`` is the bit read from
qubit ``i``.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_SHOTS = 1024
DEFAULT_RUNS = 5


class DistributionError(ValueError):
    pass


@dataclass(frozen=True)
class ShotRecord:
    counts: dict[str, int]
    shots: int
    seed: int | tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("negative count")

    @property
    def n_qubits(self) -> int:
        return len(next(iter(self.counts)))


@dataclass(frozen=True)
class EstimateWithError:
    mean: float
    std_error: float
    n_runs: int


def combo_key(n_qubits: int, eps_ratio: float) -> int:
    """Stable 64-bit key for a parameter combination."""
    text = f"n_qubits={int(n_qubits)};eps_ratio={float(eps_ratio)!r}"
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "little")


def stream_seed(master_seed: int, *indices: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(i) for i in indices))


def uniforms(seed: int | np.random.SeedSequence, size: int) -> np.ndarray:
    """``size`` doubles in [0, 1) from a PCG64 stream."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(int(seed))
    raw = np.random.PCG64(ss).random_raw(size)
    return (raw >> np.uint64(11)).astype(np.float64) * 2.0**-53


def outcome_label(index: int, n_qubits: int) -> str:
    return "".join(str((index >> i) & 1) for i in range(n_qubits))


def sample_shots(
    probabilities: Sequence[float] | np.ndarray,
    shots: int,
    seed: int | np.random.SeedSequence,
) -> ShotRecord:
    """Multinomial draw by inverse CDF, one uniform per shot."""
    p = np.asarray(probabilities, dtype=float)
    n = int(round(math.log2(p.size))) if p.size else -1
    if n < 1 or 2**n != p.size:
        raise DistributionError("distribution length must be 2^N with N >= 1")
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise DistributionError(f"not a probability distribution (sum={p.sum()!r})")
    if int(shots) != shots or shots < 1:
        raise ValueError("shots must be a positive integer")
    cdf = np.cumsum(np.clip(p, 0.0, None))
    cdf /= cdf[-1]
    u = uniforms(seed, int(shots))
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), p.size - 1)
    hits = np.bincount(idx, minlength=p.size)
    counts = {outcome_label(b, n): int(c) for b, c in enumerate(hits) if c}
    if isinstance(seed, np.random.SeedSequence):
        seed_repr = (int(seed.entropy),) + tuple(int(k) for k in seed.spawn_key)
    else:
        seed_repr = int(seed)
    return ShotRecord(counts, int(shots), seed_repr)


def magnetization_from_counts(record: ShotRecord) -> float:
    if record.shots < 1 or not record.counts:
        raise ValueError("empty shot record")
    total = 0
    for outcome, count in record.counts.items():
        ones = outcome.count("1")
        total += count * (len(outcome) - 2 * ones)
    return total / (record.shots * record.n_qubits)


def aggregate_runs(values: Sequence[float]) -> EstimateWithError:
    """Mean and standard error of the mean (sample std with ddof=1)."""
    v = np.asarray(values, dtype=float)
    if v.size < 1:
        raise ValueError("need at least one value")
    mean = float(v.mean())
    if v.size == 1 or np.all(v == v[0]):
        return EstimateWithError(mean, 0.0, int(v.size))
    return EstimateWithError(mean, float(v.std(ddof=1) / math.sqrt(v.size)), int(v.size))
