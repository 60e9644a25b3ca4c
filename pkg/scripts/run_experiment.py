#!/usr/bin/env python3
"""Experiment runner CLI.

Examples
--------
# Contour overlap moments on 20 zero-diagonal GOE spectra
python scripts/run_experiment.py overlap --n 250 --beta 1.5 --trials 20 --out runlogs/overlap

# YAML definition (flags override values inside YAML)
python scripts/run_experiment.py counting --config config/experiments/counting_goe.yaml --workers 8

# Residual decay of the expansion across sizes
python scripts/run_experiment.py overlap --config config/experiments/expansion_residual.yaml --sweep-n 250,500,1000

# Registered experiments with their sweep metric
python scripts/run_experiment.py list

Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 every trial failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

ROOT_DIR = Path(__file__).resolve().parents[1]
SRC_DIR = ROOT_DIR / "src"
for p in (ROOT_DIR, SRC_DIR):
    if str(p) not in sys.path:
        sys.path.insert(0, str(p))

from ssk_lab.enums import Experiment, XiEstimator  # noqa: E402
from ssk_lab.errors import BatchFailedError, ConfigError, LabError, NumericFailureError  # noqa: E402
from ssk_lab.harness import RunConfig, default_registry, run_experiment, run_sweep, write_outputs  # noqa: E402
from utils.reporting.controller import ReportController  # noqa: E402
from utils.reporting.renderers.csv_renderer import CsvTableRenderer  # noqa: E402
from utils.reporting.renderers.json_renderer import to_builtin  # noqa: E402

logger = logging.getLogger("run_experiment")

ENV_OUTPUT_DIR = "SSK_LAB_OUTPUT_DIR"
ENV_WORKERS = "SSK_LAB_WORKERS"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_ALL_FAILED = 4

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(name)s: %(message)s"

ESTIMATOR_CHOICES = {"full": XiEstimator.FULL_SPECTRUM.value, "cutoff": XiEstimator.CUTOFF.value}
LIST_COMMAND = "list"


def parse_grid(text: str) -> List[float]:
    """``a:b:step`` -> [a, a+step, ..., b] (b included when on the lattice)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--grid expects a:b:step, got {text!r}")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError as exc:
        raise ConfigError(f"--grid expects numbers, got {text!r}") from exc
    if step <= 0 or stop < start:
        raise ConfigError(f"--grid needs step > 0 and b >= a, got {text!r}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def parse_sizes(text: str) -> List[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"--sweep-n expects comma separated integers, got {text!r}") from exc
    if len(sizes) < 2:
        raise ConfigError("--sweep-n needs at least two sizes")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="YAML file mirroring RunConfig")
    common.add_argument("--n", type=int, help="Matrix size")
    common.add_argument("--beta", type=float, help="Inverse temperature")
    common.add_argument("--trials", type=int, help="Number of trials")
    common.add_argument("--seed", type=int, dest="master_seed", help="Master seed")
    common.add_argument("--out", type=str, help="Output directory for records and summaries")
    common.add_argument("--workers", type=int, help=f"Parallel workers (env {ENV_WORKERS})")
    common.add_argument("--executor", choices=("thread", "process"), help="Worker pool type")
    common.add_argument("--kind", type=str, help="Ensemble (or AIRY1 for counting)")
    common.add_argument(
        "--method",
        choices=("contour", "expansion", "mc", "bldw", "keyhole"),
        help="Overlap method",
    )
    common.add_argument("--delta", type=float, help="Event F gap exponent")
    common.add_argument("--eps1", type=float, help="Event F rigidity exponent")
    common.add_argument(
        "--estimator",
        choices=tuple(ESTIMATOR_CHOICES),
        help="Edge-variable estimator (default full, or cutoff when --cutoff is given)",
    )
    common.add_argument("--cutoff", type=int, help="Cutoff of the CUTOFF edge-variable estimator")
    common.add_argument("--compare-cutoff", type=int, help="Second cutoff for the stability check")
    common.add_argument("--grid", type=str, help="a:b:step grid (T, s or Im z depending on experiment)")
    common.add_argument("--z-real", type=float, default=2.0, help="Re z of the zerodiag grid")
    common.add_argument("--sweep-n", type=str, help="Comma separated sizes for a size sweep")
    common.add_argument(
        "--log-level",
        default="INFO",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Logging verbosity",
    )

    parser = argparse.ArgumentParser(description="Run spin-glass overlap and edge statistics experiments")
    sub = parser.add_subparsers(dest="experiment", required=True)
    for tag in Experiment:
        sub.add_parser(tag.value, parents=[common], help=f"run the {tag.value} experiment")
    sub.add_parser(LIST_COMMAND, help="describe the registered experiments")
    return parser


# ------------------------------------------------------------------


def _grid_overrides(experiment: Experiment, grid: Optional[str], z_real: float) -> Dict[str, Any]:
    if grid is None:
        return {}
    values = parse_grid(grid)
    if experiment in (Experiment.COUNTING, Experiment.FR_CHECK):
        return {"t_grid": values}
    if experiment is Experiment.GAP_TAIL:
        return {"s_grid": values}
    if experiment is Experiment.ZERODIAG:
        return {"z_grid": [[z_real, im] for im in values]}
    raise ConfigError(f"--grid is not used by the {experiment.value} experiment")


def _estimator_override(args: argparse.Namespace) -> Optional[str]:
    """--estimator wins; a bare --cutoff or --compare-cutoff selects CUTOFF."""
    if args.estimator is not None:
        return ESTIMATOR_CHOICES[args.estimator]
    if args.cutoff is not None or args.compare_cutoff is not None:
        return XiEstimator.CUTOFF.value
    return None


def build_config(args: argparse.Namespace) -> RunConfig:
    """Flags override environment, environment overrides YAML, YAML overrides defaults.

    The subcommand always selects the experiment.
    """
    experiment = Experiment.parse(args.experiment)
    overrides: Dict[str, Any] = {
        "experiment": experiment.value,
        "n": args.n,
        "beta": args.beta,
        "trials": args.trials,
        "master_seed": args.master_seed,
        "executor": args.executor,
        "kind": args.kind,
        "method": args.method,
        "delta": args.delta,
        "eps1": args.eps1,
        "estimator": _estimator_override(args),
        "cutoff": args.cutoff,
        "compare_cutoff": args.compare_cutoff,
        **_grid_overrides(experiment, args.grid, args.z_real),
    }
    workers = args.workers
    if workers is None and os.environ.get(ENV_WORKERS):
        try:
            workers = int(os.environ[ENV_WORKERS])
        except ValueError as exc:
            raise ConfigError(f"{ENV_WORKERS} must be an integer") from exc
    overrides["workers"] = workers

    if args.config:
        config = RunConfig.from_yaml(args.config, **overrides)
    else:
        config = RunConfig.from_dict({}, **overrides)
    return config


def resolve_output_dir(args: argparse.Namespace, config: RunConfig) -> Optional[Path]:
    if args.out:
        return Path(args.out)
    env_root = os.environ.get(ENV_OUTPUT_DIR)
    if env_root:
        return ReportController(env_root).run_dir(config.experiment, label=f"n{config.n}")
    return Path(config.output_path) if config.output_path else None


def _print_json(payload: Dict[str, Any]) -> None:
    print(json.dumps(to_builtin(payload), indent=2, sort_keys=True))


def prepare_output_dir(out_dir: Optional[Path]) -> Optional[Path]:
    """Create *out_dir* up front so an unwritable path fails before any trial runs."""
    if out_dir is None:
        return None
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out_dir}: {exc}") from exc
    return out_dir


def list_experiments() -> int:
    registry = default_registry()
    _print_json({"experiments": [registry.info(tag) for tag in registry.list_experiments()]})
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    if args.experiment == LIST_COMMAND:
        return list_experiments()
    config = build_config(args)
    out_dir = prepare_output_dir(resolve_output_dir(args, config))
    if args.sweep_n:
        sweep = run_sweep(config, parse_sizes(args.sweep_n))
        if out_dir is not None:
            CsvTableRenderer().render(sweep.frame, out_dir / "sweep.csv")
        _print_json(sweep.to_dict())
        return EXIT_OK

    result = run_experiment(config)
    if out_dir is not None:
        write_outputs(result, out_dir)
        print(f"Results written to {out_dir}", file=sys.stderr)
    _print_json(result.summary)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = getattr(logging, getattr(args, "log_level", "INFO"))
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    try:
        return run(args)
    except BatchFailedError as exc:
        logger.error("%s", exc)
        return EXIT_ALL_FAILED
    except NumericFailureError as exc:
        logger.error("numeric failure: %s", exc)
        return EXIT_NUMERIC
    except ValueError as exc:  # ConfigError and every InvalidArgumentError
        logger.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    except LabError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
