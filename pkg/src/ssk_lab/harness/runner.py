from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from utils.experiments.sweeper import SizeSweep, run_size_sweep
from utils.reporting.controller import ReportController
from utils.runners.base_batch_runner import BatchRunner
from utils.runners.batch_config import RunConfig
from utils.runners.seeding import derive_seed

from ..errors import BatchFailedError, ConfigError, InvalidArgumentError
from .records import SCHEMA_VERSION, TrialRecord, record_inputs
from .registry import ExperimentSpec, default_registry

"""Deterministic execution of an experiment over many trials.

Trials are mapped over a :class:`BatchRunner`; each one is fully determined
by ``(config, trial_index)``.  Records are put back in trial order before
the summary is computed, so serial and parallel runs agree exactly.
"""

logger = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    config: RunConfig
    records: List[TrialRecord] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    table: Optional[pd.DataFrame] = None

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if not r.ok)

    @property
    def succeeded(self) -> List[TrialRecord]:
        return [r for r in self.records if r.ok]

    def timings(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "trial_index": [r.trial_index for r in self.records],
                "ok": [r.ok for r in self.records],
                "wall_time": [r.wall_time for r in self.records],
            }
        )


# ------------------------------------------------------------------
# validation
# ------------------------------------------------------------------


def validate_config(config: RunConfig) -> ExperimentSpec:
    """Run the generic and the experiment-specific checks.

    Raises:
        ConfigError: any check failed; nothing has been computed yet.
    """
    config.validate()
    try:
        spec = default_registry().get(config.experiment)
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc)) from exc
    spec.validate(config)
    return spec


# ------------------------------------------------------------------
# execution
# ------------------------------------------------------------------


def _failure_record(
    config: RunConfig, spec: ExperimentSpec, index: int, exc_type: str, message: str
) -> TrialRecord:
    return TrialRecord(
        experiment=spec.tag.value,
        trial_index=index,
        derived_seed=derive_seed(config.master_seed, index, spec.seed_role),
        inputs=record_inputs(config.to_dict()),
        error={"type": exc_type, "message": message},
    )


def execute_trial(config: RunConfig, index: int) -> TrialRecord:
    """Run trial *index*; failures become a record with an error payload."""
    spec = default_registry().get(config.experiment)
    try:
        derived_seed, outputs = spec.trial(config, index)
    except Exception as exc:  # pylint: disable=broad-except
        logger.exception("%s trial %d failed", spec.tag.value, index)
        return _failure_record(config, spec, index, type(exc).__name__, str(exc))
    return TrialRecord(
        experiment=spec.tag.value,
        trial_index=index,
        derived_seed=derived_seed,
        inputs=record_inputs(config.to_dict()),
        outputs=outputs,
    )


def run_experiment(config: RunConfig) -> ExperimentResult:
    """Validate, run every trial and summarize.

    Raises:
        ConfigError: invalid configuration (before any trial runs).
        BatchFailedError: every trial failed.
    """
    spec = validate_config(config)
    if config.trials == 0:
        logger.info("%s: no trials requested", spec.tag.value)
        return ExperimentResult(config=config)

    runner = BatchRunner(partial(execute_trial, config), config.workers, executor=config.executor)
    outcomes = runner.run(range(config.trials))
    records: List[TrialRecord] = []
    for outcome in outcomes:
        if outcome.ok:
            record = outcome.result
            record.wall_time = outcome.wall_time
        else:
            record = _failure_record(
                config, spec, outcome.index, outcome.error_type or "Exception", outcome.error or ""
            )
        records.append(record)
    records.sort(key=lambda r: r.trial_index)

    result = ExperimentResult(config=config, records=records)
    if not result.succeeded:
        raise BatchFailedError(
            f"all {config.trials} {spec.tag.value} trials failed", failures=result.failures
        )

    ok = result.succeeded
    stats = BatchRunner.aggregate(outcomes)
    error_types = sorted({r.error["type"] for r in records if r.error})
    result.summary = {
        "schema_version": SCHEMA_VERSION,
        "experiment": spec.tag.value,
        "n": config.n,
        "master_seed": config.master_seed,
        "trials": stats["tasks"],
        "succeeded": len(ok),
        "failed": result.failures,
        "error_types": error_types,
        **spec.summarize(config, ok, result.failures),
    }
    if spec.table is not None:
        result.table = spec.table(config, ok)
    logger.info(
        "%s n=%d: %d/%d trials succeeded", spec.tag.value, config.n, len(ok), config.trials
    )
    return result


# ------------------------------------------------------------------
# persistence and sweeps
# ------------------------------------------------------------------


def write_outputs(result: ExperimentResult, out_dir: Path | str) -> Path:
    """Write records, summary, timings and the optional table to *out_dir*."""
    controller = ReportController(Path(out_dir).parent)
    return controller.generate(
        result.records,
        result.summary,
        out_dir=out_dir,
        timings=result.timings() if result.records else None,
        table=result.table,
    )


def run_sweep(config: RunConfig, n_values: Sequence[int], *, workers: int = 1) -> SizeSweep:
    """Repeat *config* at every size in *n_values* and fit the sweep metric.

    Raises:
        ConfigError: the experiment defines no sweep metric, or a size fails validation.
    """
    spec = default_registry().get(config.experiment)
    if spec.sweep_metric is None:
        raise ConfigError(f"experiment {spec.tag.value} does not support size sweeps")
    configs = {int(n): replace(config, n=int(n)) for n in n_values}
    for sized in configs.values():
        validate_config(sized)

    def run_at(n: int) -> Dict[str, Any]:
        return run_experiment(configs[n]).summary

    return run_size_sweep(run_at, list(configs), metric=spec.sweep_metric, workers=workers)


__all__ = [
    "ExperimentResult",
    "execute_trial",
    "run_experiment",
    "run_sweep",
    "validate_config",
    "write_outputs",
]
