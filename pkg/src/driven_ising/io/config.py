"""Experiment configuration and noise-profile documents (JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from ..backends.noise import PROFILES, NoiseProfile, NoiseProfileError
from ..model import DEFAULT_DT, DEFAULT_F_PH, DEFAULT_J_Z, DEFAULT_N_STEPS, SpinChainParams
from ..sampling import DEFAULT_RUNS, DEFAULT_SHOTS

BACKENDS = ("statevector", "noisy", "sampled", "all")

_prob = {"type": "number", "minimum": 0, "maximum": 1}
_readout = {"oneOf": [_prob, {"type": "array", "items": _prob, "minItems": 1}]}
_time = {"oneOf": [{"type": "number", "minimum": 0}, {"type": "null"}]}

NOISE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "p01": _readout,
        "p10": _readout,
        "depol_1q": _prob,
        "depol_2q": _prob,
        "t1": _time,
        "t2": _time,
        "dur_1q": {"type": "number", "minimum": 0},
        "dur_2q": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

_path = {"type": ["string", "null"]}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["n_qubits", "eps_ratio"],
    "properties": {
        "n_qubits": {"type": "integer", "minimum": 1},
        "eps_ratio": {"type": "number"},
        "n_steps": {"type": "integer", "minimum": 0},
        "j_z": {"type": "number"},
        "dt": {"type": "number", "exclusiveMinimum": 0},
        "f_ph": {"type": "number", "minimum": 0},
        "backend": {"enum": list(BACKENDS)},
        "noise_profile": {"oneOf": [{"type": "string"}, NOISE_SCHEMA]},
        "idle_decoherence": {"type": "boolean"},
        "shots": {"type": "integer", "minimum": 1},
        "runs": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "out": _path,
        "plot": _path,
        "emit_qasm": _path,
        "emit_quil": _path,
    },
    "additionalProperties": False,
}


class ConfigError(ValueError):
    """Invalid configuration; ``errors`` holds one message per violation."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _validate(doc, schema) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        raise ConfigError([f"{e.json_path}: {e.message}" for e in errors])


def parse_noise_profile(doc: dict) -> NoiseProfile:
    _validate(doc, NOISE_SCHEMA)
    try:
        return NoiseProfile.from_dict(doc)
    except NoiseProfileError as exc:
        raise ConfigError([f"$: {exc}"]) from None


def load_noise_profile(ref: str | dict | NoiseProfile, base_dir: str | Path | None = None) -> NoiseProfile:
    """Resolve a profile by built-in name, JSON file path, or inline mapping."""
    if isinstance(ref, NoiseProfile):
        return ref
    if isinstance(ref, dict):
        return parse_noise_profile(ref)
    if ref in PROFILES:
        return PROFILES[ref]
    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        path = Path(base_dir) / path
    if not path.is_file():
        raise ConfigError([f"$.noise_profile: no built-in profile or file named {ref!r}"])
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError([f"{path}: malformed JSON: {exc}"]) from None
    return parse_noise_profile(doc)


@dataclass(frozen=True)
class ExperimentConfig:
    params: SpinChainParams
    eps_ratio: float
    backend: str = "statevector"
    noise_profile: str | dict = "nisq-2019"
    idle_decoherence: bool = False
    shots: int = DEFAULT_SHOTS
    runs: int = DEFAULT_RUNS
    seed: int = 0
    out: str | None = None
    plot: str | None = None
    emit_qasm: str | None = None
    emit_quil: str | None = None
    base_dir: str | None = field(default=None, compare=False)

    @property
    def needs_noise(self) -> bool:
        return self.backend in ("noisy", "sampled", "all")

    def noise(self) -> NoiseProfile:
        return load_noise_profile(self.noise_profile, self.base_dir)


def config_from_dict(doc: dict, base_dir: str | Path | None = None) -> ExperimentConfig:
    _validate(doc, CONFIG_SCHEMA)
    try:
        params = SpinChainParams.from_ratio(
            int(doc["n_qubits"]),
            doc["eps_ratio"],
            j_z=doc.get("j_z", DEFAULT_J_Z),
            f_ph=doc.get("f_ph", DEFAULT_F_PH),
            dt=doc.get("dt", DEFAULT_DT),
            n_steps=int(doc.get("n_steps", DEFAULT_N_STEPS)),
        )
    except ValueError as exc:
        raise ConfigError([f"$: {exc}"]) from None
    cfg = ExperimentConfig(
        params=params,
        eps_ratio=float(doc["eps_ratio"]),
        backend=doc.get("backend", "statevector"),
        noise_profile=doc.get("noise_profile", "nisq-2019"),
        idle_decoherence=doc.get("idle_decoherence", False),
        shots=int(doc.get("shots", DEFAULT_SHOTS)),
        runs=int(doc.get("runs", DEFAULT_RUNS)),
        seed=int(doc.get("seed", 0)),
        out=doc.get("out"),
        plot=doc.get("plot"),
        emit_qasm=doc.get("emit_qasm"),
        emit_quil=doc.get("emit_quil"),
        base_dir=None if base_dir is None else str(base_dir),
    )
    if cfg.needs_noise:
        cfg.noise()
    return cfg


def load_config(text: str, base_dir: str | Path | None = None) -> ExperimentConfig:
    """Parse and validate a JSON experiment configuration, filling in defaults."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"malformed JSON: {exc}"]) from None
    return config_from_dict(doc, base_dir)
