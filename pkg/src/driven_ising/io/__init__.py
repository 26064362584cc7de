from .config import (
    BACKENDS,
    CONFIG_SCHEMA,
    NOISE_SCHEMA,
    ConfigError,
    ExperimentConfig,
    config_from_dict,
    load_config,
    load_noise_profile,
)
from .emit import emit_qasm, emit_quil, format_angle, normalize_angle
from .plot import render_plot, svg_text
from .results import COLUMNS, ResultRow, ResultTable, from_csv, from_json, read_results, to_csv, to_json, write_results
