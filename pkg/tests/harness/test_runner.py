import json
import math
from dataclasses import replace

import pytest

from ssk_lab.enums import Experiment
from ssk_lab.errors import BatchFailedError, ConfigError, NumericFailureError
from ssk_lab.harness import RunConfig, default_registry, execute_trial, run_experiment, run_sweep, write_outputs
from utils.reporting.controller import RECORDS_FILE, SUMMARY_FILE, TABLE_FILE, TIMINGS_FILE


def _lines(result):
    return [r.to_json_line() for r in result.records]


def test_zero_trials_give_an_empty_result():
    result = run_experiment(RunConfig(experiment="sample", n=10, trials=0))
    assert result.records == []
    assert result.summary == {}
    assert result.table is None


def test_serial_and_parallel_runs_agree():
    serial = run_experiment(RunConfig(experiment="sample", n=20, trials=4, master_seed=5))
    threaded = run_experiment(RunConfig(experiment="sample", n=20, trials=4, master_seed=5, workers=2))
    assert _lines(serial) == _lines(threaded)
    assert json.dumps(serial.summary, sort_keys=True, default=str) == json.dumps(
        threaded.summary, sort_keys=True, default=str
    )
    assert [r.trial_index for r in serial.records] == [0, 1, 2, 3]


def test_master_seed_changes_the_draws():
    first = run_experiment(RunConfig(experiment="sample", n=10, trials=2, master_seed=1))
    second = run_experiment(RunConfig(experiment="sample", n=10, trials=2, master_seed=2))
    assert _lines(first) != _lines(second)


def test_summary_header():
    result = run_experiment(RunConfig(experiment="sample", n=12, trials=3))
    summary = result.summary
    assert summary["experiment"] == "sample"
    assert summary["n"] == 12
    assert summary["trials"] == 3
    assert summary["succeeded"] == 3
    assert summary["failed"] == 0
    assert summary["error_types"] == []
    assert "lambda_max" in summary


def _patch_trial(monkeypatch, trial):
    registry = default_registry()
    spec = registry.get(Experiment.SAMPLE)
    monkeypatch.setitem(registry._specs, Experiment.SAMPLE, replace(spec, trial=trial))
    return spec


def test_failing_trial_is_recorded_and_isolated(monkeypatch):
    original = default_registry().get(Experiment.SAMPLE).trial

    def flaky(config, index):
        if index == 1:
            raise NumericFailureError("eigensolver did not converge", seed=index)
        return original(config, index)

    _patch_trial(monkeypatch, flaky)
    result = run_experiment(RunConfig(experiment="sample", n=10, trials=3))
    assert [r.ok for r in result.records] == [True, False, True]
    assert result.records[1].error["type"] == "NumericFailureError"
    assert result.summary["failed"] == 1
    assert result.summary["succeeded"] == 2
    assert result.summary["error_types"] == ["NumericFailureError"]


def test_execute_trial_turns_exceptions_into_records(monkeypatch):
    def broken(config, index):
        raise RuntimeError("boom")

    _patch_trial(monkeypatch, broken)
    record = execute_trial(RunConfig(experiment="sample", n=10, trials=1), 0)
    assert record.error == {"type": "RuntimeError", "message": "boom"}
    assert record.outputs == {}


def test_every_trial_failing_raises(monkeypatch):
    def broken(config, index):
        raise NumericFailureError("no convergence")

    _patch_trial(monkeypatch, broken)
    with pytest.raises(BatchFailedError):
        run_experiment(RunConfig(experiment="sample", n=10, trials=2))


@pytest.mark.parametrize(
    "config",
    [
        RunConfig(experiment="sample", n=0),
        RunConfig(experiment="sample", workers=0),
        RunConfig(experiment="sample", kind="GOE_TRIDIAG", n=1),
        RunConfig(experiment="counting", n=1000, t_grid=[0.5, 2.0], trials=200),
        RunConfig(experiment="counting", n=1000, trials=10),
        RunConfig(experiment="fr-check", n=10, trials=10),
        RunConfig(experiment="overlap", beta=0.9),
        RunConfig(experiment="overlap", method="mc", n=40),
        RunConfig(experiment="xi", estimator="CUTOFF", n=100),
        RunConfig(experiment="xi", estimator="CUTOFF", cutoff=100, n=100),
        RunConfig(experiment="xi", cutoff=50, n=100),
        RunConfig(experiment="xi", estimator="FULL_SPECTRUM", compare_cutoff=50, n=100),
        RunConfig(experiment="zerodiag", n=200, z_grid=[[2.0, 0.9]]),
        RunConfig(experiment="mainconv", n=100),
        RunConfig(experiment="gap-tail", n=100, s_grid=[]),
    ],
)
def test_invalid_configs_fail_before_running(config):
    with pytest.raises(ConfigError):
        run_experiment(config)


def test_unknown_config_key():
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"experiment": "sample", "n_matrix": 100})


def test_regime_checks_can_be_lifted():
    result = run_experiment(RunConfig(experiment="fr-check", n=3, trials=4, enforce_regime=False))
    assert result.summary["succeeded"] == 4


def test_write_outputs(tmp_path):
    result = run_experiment(RunConfig(experiment="gap-tail", n=50, trials=5, enforce_regime=False))
    out_dir = write_outputs(result, tmp_path / "run")
    lines = (out_dir / RECORDS_FILE).read_text(encoding="utf-8").splitlines()
    assert lines == _lines(result)
    summary = json.loads((out_dir / SUMMARY_FILE).read_text(encoding="utf-8"))
    assert summary["experiment"] == "gap-tail"
    assert (out_dir / TIMINGS_FILE).exists()
    assert (out_dir / TABLE_FILE).exists()


def test_rerun_writes_identical_records(tmp_path):
    config = RunConfig(experiment="xi", n=40, trials=3, master_seed=8)
    first = write_outputs(run_experiment(config), tmp_path / "a")
    second = write_outputs(run_experiment(config), tmp_path / "b")
    assert (first / RECORDS_FILE).read_bytes() == (second / RECORDS_FILE).read_bytes()
    assert (first / SUMMARY_FILE).read_bytes() == (second / SUMMARY_FILE).read_bytes()


def test_sweep_fits_a_slope():
    sweep = run_sweep(RunConfig(experiment="zerodiag", trials=3), [50, 100])
    assert list(sweep.frame["n"]) == [50, 100]
    assert sweep.metric == "diff1_median"
    assert sweep.frame["diff1_median"].gt(0).all()
    assert math.isfinite(sweep.slope)


def test_sweep_needs_a_metric():
    with pytest.raises(ConfigError):
        run_sweep(RunConfig(experiment="sample", trials=2), [10, 20])
