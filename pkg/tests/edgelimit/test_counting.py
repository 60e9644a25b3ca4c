import numpy as np
import pytest

from ssk_lab.edgelimit import counting_stats, counting_stats_from_counts, counting_trial, counting_window
from ssk_lab.edgelimit.counting import (
    edge_counts,
    goe_variance_envelope,
    gue_reference_variance,
    reference_mean,
    resolve_kind,
    validate_t_grid,
)
from ssk_lab.enums import EnsembleKind
from ssk_lab.ensembles import sample_spectrum
from ssk_lab.errors import InvalidArgumentError


def test_edge_counts_thresholds():
    counts = edge_counts([2.0, 1.995, 1.5], 1000, [1.0, 0.1, 100.0])
    assert list(counts) == [2, 1, 3]


def test_window_and_grid_validation():
    lo, hi = counting_window(1000)
    assert lo == 1.0
    assert hi == pytest.approx(1000 ** (2 / 3 - 0.1))
    np.testing.assert_array_equal(validate_t_grid(1000, [1, 5, 10]), [1.0, 5.0, 10.0])
    with pytest.raises(InvalidArgumentError):
        validate_t_grid(1000, [0.5, 2.0])
    with pytest.raises(InvalidArgumentError):
        validate_t_grid(1000, [])


def test_airy_proxy_resolves_to_tridiagonal_goe():
    assert resolve_kind("airy1") == (EnsembleKind.GOE_TRIDIAG, "AIRY1")
    assert resolve_kind("GUE_TRIDIAG") == (EnsembleKind.GUE_TRIDIAG, "GUE_TRIDIAG")


def test_trial_uses_only_the_top_of_the_spectrum():
    grid = np.array([1.0, 2.0, 4.0, 8.0])
    n, seed = 600, 123
    expected = edge_counts(sample_spectrum("GOE_TRIDIAG", n, seed).eigenvalues, n, grid)
    np.testing.assert_array_equal(counting_trial("GOE_TRIDIAG", n, grid, seed), expected)


def test_reference_curves():
    assert reference_mean(1.0) == pytest.approx(2.0 / (3.0 * np.pi))
    assert gue_reference_variance(1.0) == 0.0
    assert goe_variance_envelope(1.0) == 3.0


def test_stats_from_counts():
    grid = [2.0, 4.0]
    stats = counting_stats_from_counts([[0, 1], [2, 3], [1, 2]], grid, "GUE_DENSE", 100)
    np.testing.assert_allclose(stats.empirical_mean, [1.0, 2.0])
    np.testing.assert_allclose(stats.empirical_var, [1.0, 1.0])
    np.testing.assert_allclose(stats.reference_variance, gue_reference_variance(grid))
    assert list(stats.to_frame().columns) == [
        "t",
        "empirical_mean",
        "empirical_var",
        "reference_mean",
        "reference_variance",
    ]
    with pytest.raises(InvalidArgumentError):
        counting_stats_from_counts([[0, 1]], grid, "GOE_DENSE", 100)


def test_stats_need_enough_trials():
    with pytest.raises(InvalidArgumentError):
        counting_stats("GOE_TRIDIAG", 1000, [2.0], trials=50, seed=0)


@pytest.mark.slow
@pytest.mark.montecarlo
def test_goe_counting_mean_and_variance():
    grid = [2.0, 4.0, 6.0, 8.0, 10.0]
    stats = counting_stats("GOE_TRIDIAG", 4000, grid, trials=300, seed=2024)
    assert np.all(np.abs(stats.mean_offset) <= 1.5)
    assert np.all(stats.empirical_var <= goe_variance_envelope(grid))


@pytest.mark.slow
@pytest.mark.montecarlo
def test_gue_counting_variance_follows_log_growth():
    grid = [4.0, 20.0]
    stats = counting_stats("GUE_TRIDIAG", 2000, grid, trials=2000, seed=77)
    reference = gue_reference_variance(grid)
    assert 0.5 * reference[1] <= stats.empirical_var[1] <= 2.0 * reference[1]
    growth = stats.empirical_var[1] - stats.empirical_var[0]
    expected_growth = reference[1] - reference[0]
    assert 0.5 * expected_growth <= growth <= 2.0 * expected_growth
