"""Noise profiles for the density-matrix backend."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence


class NoiseProfileError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseProfile:
    """Readout, gate-error and decoherence parameters.

    ``p01`` is P(read 1 | state 0) and ``p10`` is P(read 0 | state 1); each is
    either one value shared by all qubits or a per-qubit sequence. Times are
    in ns. ``t1``/``t2`` of None or 0 disable amplitude damping/dephasing.
    """

    p01: float | tuple[float, ...] = 0.0
    p10: float | tuple[float, ...] = 0.0
    depol_1q: float = 0.0
    depol_2q: float = 0.0
    t1: float | None = None
    t2: float | None = None
    dur_1q: float = 0.0
    dur_2q: float = 0.0

    def __post_init__(self):
        for name in ("p01", "p10"):
            v = getattr(self, name)
            if isinstance(v, (list, tuple)):
                object.__setattr__(self, name, tuple(float(x) for x in v))
        probs = [("depol_1q", self.depol_1q), ("depol_2q", self.depol_2q)]
        for name in ("p01", "p10"):
            v = getattr(self, name)
            vals = v if isinstance(v, tuple) else (v,)
            probs += [(name, x) for x in vals]
        for name, p in probs:
            if not (isinstance(p, (int, float)) and 0.0 <= p <= 1.0):
                raise NoiseProfileError(f"{name} must be a probability in [0, 1], got {p!r}")
        for name in ("t1", "t2"):
            v = getattr(self, name)
            if v is not None and not (v >= 0):
                raise NoiseProfileError(f"{name} must be >= 0, got {v!r}")
        for name in ("dur_1q", "dur_2q"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise NoiseProfileError(f"{name} must be a finite duration >= 0, got {v!r}")
        if self.t1 and self.t2 and self.t2 > 2 * self.t1:
            raise NoiseProfileError(f"t2 ({self.t2}) must not exceed 2*t1 ({2 * self.t1})")

    def readout_pairs(self, n_qubits: int) -> tuple[list[float], list[float]]:
        out = []
        for v in (self.p01, self.p10):
            if isinstance(v, tuple):
                if len(v) < n_qubits:
                    raise NoiseProfileError(f"readout errors given for {len(v)} qubits, circuit has {n_qubits}")
                out.append(list(v[:n_qubits]))
            else:
                out.append([float(v)] * n_qubits)
        return out[0], out[1]

    @property
    def has_decoherence(self) -> bool:
        return bool(self.t1) or bool(self.t2)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("p01", "p10"):
            if isinstance(d[k], tuple):
                d[k] = list(d[k])
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "NoiseProfile":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise NoiseProfileError(f"unknown noise fields: {sorted(unknown)}")
        return cls(**data)


IDEAL = NoiseProfile()

NISQ_2019 = NoiseProfile(
    p01=0.03,
    p10=0.03,
    depol_1q=0.001,
    depol_2q=0.02,
    t1=50_000.0,
    t2=60_000.0,
    dur_1q=50.0,
    dur_2q=300.0,
)

PROFILES: dict[str, NoiseProfile] = {"ideal": IDEAL, "nisq-2019": NISQ_2019}


def symmetric_readout(p: float | Sequence[float]) -> NoiseProfile:
    """Profile with only readout error ``p`` in both directions."""
    return NoiseProfile(p01=p, p10=p)
