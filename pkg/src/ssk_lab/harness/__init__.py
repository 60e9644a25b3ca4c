"""Experiment orchestration: registry, deterministic runner, records."""

from utils.reporting.metrics import empirical_cdf, ks_statistic, loglog_slope, summarize
from utils.runners.batch_config import RunConfig
from utils.runners.seeding import derive_seed

from .records import SCHEMA_VERSION, TrialRecord, record_inputs
from .registry import ExperimentRegistry, ExperimentSpec, default_registry
from .runner import ExperimentResult, execute_trial, run_experiment, run_sweep, validate_config, write_outputs

__all__ = [
    "empirical_cdf",
    "ks_statistic",
    "loglog_slope",
    "summarize",
    "RunConfig",
    "derive_seed",
    "SCHEMA_VERSION",
    "TrialRecord",
    "record_inputs",
    "ExperimentRegistry",
    "ExperimentSpec",
    "default_registry",
    "ExperimentResult",
    "execute_trial",
    "run_experiment",
    "run_sweep",
    "validate_config",
    "write_outputs",
]
