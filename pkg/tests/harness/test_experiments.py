import math

import pytest

from ssk_lab.harness import RunConfig, run_experiment
from ssk_lab.harness.experiments import contour_spec


def _run(**kwargs):
    return run_experiment(RunConfig(**kwargs))


def test_sample_outputs_and_summary():
    result = _run(experiment="sample", n=30, trials=3)
    outputs = result.records[0].outputs
    for key in ("eigenvalues", "lambda_max", "scaled_gap", "gap_ok", "rigidity_ok", "event_f"):
        assert key in outputs
    assert outputs["lambda_max"] == outputs["eigenvalues"][0]
    summary = result.summary
    assert 0.0 <= summary["event_f_fraction"] <= 1.0
    assert set(summary["loop_identity"]) == {"lhs_mean", "rhs_mean", "difference", "stderr"}


def test_overlap_contour_run():
    result = _run(experiment="overlap", n=8, trials=2, beta=1.5)
    outputs = result.records[0].outputs
    assert outputs["method"] == "CONTOUR_EXACT"
    assert outputs["abs1_lower"] <= outputs["abs1_upper"]
    assert outputs["violations"] == []
    summary = result.summary
    assert summary["method"] == "contour"
    assert "residual_m2_median_event_f" in summary
    assert summary["m2"]["count"] == 2


@pytest.mark.parametrize("method", ["expansion", "bldw", "keyhole"])
def test_overlap_alternative_methods(method):
    result = _run(experiment="overlap", n=12, trials=2, beta=2.0, method=method, force=True, n_samples=2000)
    assert result.summary["succeeded"] == 2
    assert all(0.0 < r.outputs["m2"] for r in result.records)
    assert math.isnan(result.summary["residual_m2_median_event_f"])


@pytest.mark.montecarlo
def test_overlap_monte_carlo_run():
    result = _run(experiment="overlap", n=4, trials=2, beta=1.5, method="mc", n_samples=2000, kind="GOE_DENSE")
    assert result.records[0].outputs["method"] == "MONTE_CARLO"
    assert 0.0 < result.summary["m2"]["mean"] <= 1.0


def test_xi_with_cutoff_comparison():
    result = _run(experiment="xi", n=400, trials=3, estimator="CUTOFF", cutoff=40, compare_cutoff=80)
    outputs = result.records[0].outputs
    assert outputs["xi_shift"] == pytest.approx(outputs["xi"] - outputs["xi_compare"])
    assert 0.0 <= result.summary["stable_fraction"] <= 1.0


def test_counting_run_has_a_table():
    result = _run(experiment="counting", n=200, trials=5, enforce_regime=False)
    assert list(result.summary["t_grid"]) == [1.0, 2.0, 4.0]
    assert result.table is not None
    assert len(result.table) == 3


def test_fr_check_run():
    result = _run(experiment="fr-check", n=4, trials=6, k_max=2, enforce_regime=False)
    assert result.summary["trials"] == 6
    assert 0.0 <= result.summary["max_ks"] <= 1.0
    assert result.summary["match_variance"] is True


def test_zerodiag_run():
    result = _run(experiment="zerodiag", n=100, trials=3, z_grid=[[2.0, 0.1]])
    outputs = result.records[0].outputs
    assert outputs["weyl_ok"]
    assert len(outputs["stieltjes_bounds"]) == 1
    summary = result.summary
    assert summary["weyl_fraction"] == 1.0
    assert summary["threshold"] == pytest.approx(100**-0.8)
    assert 0.0 <= summary["stieltjes_within_fraction"] <= 1.0


def test_mainconv_run():
    result = _run(experiment="mainconv", n=20, trials=3, enforce_regime=False)
    assert set(result.records[0].outputs) == {"a", "b"}
    assert result.summary["n_airy"] == 80
    assert result.summary["winning_sign"] in (1, -1)


def test_gap_tail_run():
    result = _run(experiment="gap-tail", n=60, trials=8, enforce_regime=False, s_grid=[0.5, 1.0])
    assert result.summary["samples"] == 8
    assert list(result.summary["s_grid"]) == [0.5, 1.0]
    assert list(result.table.columns[:3]) == ["s", "cdf", "stderr"]


def test_contour_spec_from_config():
    spec = contour_spec(RunConfig(contour={"panel_target_error": 1e-10}))
    assert spec.panel_target_error == 1e-10
