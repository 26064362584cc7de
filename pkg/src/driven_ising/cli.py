"""Command-line runner.

    driven-ising run --qubits 2 --eps-ratio 0.5 --steps 40 --backend all --out trace.csv
    driven-ising sweep --qubits 2,3,4 --eps-ratios 0.2,0.5,1,5 --out-dir fig2/

Exit status is 0 on success, 1 for configuration errors and 2 for failures
while running.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .experiment import run_experiment, write_emissions
from .io.config import BACKENDS, ConfigError, ExperimentConfig, config_from_dict
from .io.plot import render_plot
from .io.results import ResultTable, to_csv, write_results

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

# flag dest -> config key
_FLAG_KEYS = {
    "qubits": "n_qubits",
    "eps_ratio": "eps_ratio",
    "steps": "n_steps",
    "dt_fs": "dt",
    "j_z": "j_z",
    "f_thz": "f_ph",
    "backend": "backend",
    "shots": "shots",
    "runs": "runs",
    "seed": "seed",
    "noise_profile": "noise_profile",
    "idle_decoherence": "idle_decoherence",
    "emit_qasm": "emit_qasm",
    "emit_quil": "emit_quil",
    "out": "out",
    "plot": "plot",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError([message])


def _csv_list(kind):
    def parse(text):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid list {text!r}") from None

    return parse


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON experiment configuration; flags override its values")
    p.add_argument("--steps", type=int)
    p.add_argument("--dt-fs", type=float)
    p.add_argument("--j-z", type=float, help="exchange coupling in eV (negative: antiferromagnetic)")
    p.add_argument("--f-thz", type=float, help="drive frequency in THz")
    p.add_argument("--backend", choices=BACKENDS)
    p.add_argument("--shots", type=int)
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--noise-profile", help="built-in name (ideal, nisq-2019) or JSON file")
    p.add_argument("--idle-decoherence", action="store_true", default=None)
    p.add_argument("--format", choices=("csv", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="driven-ising", description="Driven Ising chain dynamics on simulated quantum backends.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="simulate one parameter combination")
    _common(run)
    run.add_argument("--qubits", type=int)
    run.add_argument("--eps-ratio", type=float)
    run.add_argument("--emit-qasm", metavar="DIR")
    run.add_argument("--emit-quil", metavar="DIR")
    run.add_argument("--out", help="result table path (default: CSV on stdout)")
    run.add_argument("--plot", help="SVG output path")

    sweep = sub.add_parser("sweep", help="simulate a grid of chain sizes and drive strengths")
    _common(sweep)
    sweep.add_argument("--qubits", type=_csv_list(int), required=True)
    sweep.add_argument("--eps-ratios", type=_csv_list(float), required=True)
    sweep.add_argument("--out-dir", required=True)
    sweep.add_argument("--plots", action="store_true", help="also write one SVG per combination")
    sweep.add_argument("--emit", action="store_true", help="also write QASM and Quil per combination")
    sweep.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    return parser


def _config_doc(args: argparse.Namespace) -> tuple[dict, str | None]:
    doc, base = {}, None
    if args.config:
        path = Path(args.config)
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError([f"cannot read config: {exc}"]) from None
        except json.JSONDecodeError as exc:
            raise ConfigError([f"{path}: malformed JSON: {exc}"]) from None
        if not isinstance(doc, dict):
            raise ConfigError([f"{path}: top level must be an object"])
        base = str(path.parent)
    for dest, key in _FLAG_KEYS.items():
        v = getattr(args, dest, None)
        if v is not None:
            doc[key] = v
    return doc, base


def combination_name(n_qubits: int, eps_ratio: float) -> str:
    return f"N{n_qubits}_eps{eps_ratio:g}"


def _write_outputs(cfg: ExperimentConfig, table: ResultTable, fmt: str | None) -> None:
    if cfg.out:
        write_results(table, cfg.out, fmt)
    else:
        sys.stdout.write(to_csv(table))
    if cfg.plot:
        title = f"N={cfg.params.n_qubits}, eps_ph={cfg.eps_ratio:g} J_z"
        render_plot(table, cfg.plot, title)
    write_emissions(cfg, cfg.emit_qasm, cfg.emit_quil)


def cmd_run(args) -> int:
    doc, base = _config_doc(args)
    cfg = config_from_dict(doc, base)
    table = run_experiment(cfg)
    _write_outputs(cfg, table, args.format)
    return EXIT_OK


def cmd_sweep(args) -> int:
    doc, base = _config_doc(args)
    for key in ("out", "plot", "emit_qasm", "emit_quil"):
        doc.pop(key, None)
    out_dir = Path(args.out_dir)
    fmt = args.format or "csv"
    configs = {}
    for n in args.qubits:
        for eps in args.eps_ratios:
            name = combination_name(n, eps)
            cfg_doc = dict(doc, n_qubits=n, eps_ratio=eps, out=str(out_dir / f"{name}.{fmt}"))
            if args.plots:
                cfg_doc["plot"] = str(out_dir / f"{name}.svg")
            if args.emit:
                cfg_doc["emit_qasm"] = str(out_dir / name / "qasm")
                cfg_doc["emit_quil"] = str(out_dir / name / "quil")
            configs[name] = config_from_dict(cfg_doc, base)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        futures = {name: pool.submit(run_experiment, cfg) for name, cfg in configs.items()}
        tables = {name: f.result() for name, f in futures.items()}
    for name in sorted(configs):
        _write_outputs(configs[name], tables[name], fmt)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = cmd_run if args.command == "run" else cmd_sweep
        return handler(args)
    except ConfigError as exc:
        for msg in exc.errors:
            print(f"config error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - reported as a runtime failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
