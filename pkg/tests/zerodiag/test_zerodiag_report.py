import numpy as np
import pytest

from ssk_lab.ensembles import coupled_pair_from_matrix, sample_coupled_pair, spectrum_from_values
from ssk_lab.ensembles.records import CoupledPair
from ssk_lab.errors import InvalidArgumentError
from ssk_lab.zerodiag import (
    ev_diff_report,
    max_k,
    stieltjes_bound,
    stieltjes_diff,
    stieltjes_window,
    weyl_check,
    zerodiag_trial,
)


def test_max_k_grows_with_the_twentieth_root():
    assert max_k(1) == 5
    assert max_k(1000) == 5
    assert max_k(2**21) == 6


def test_k_max_outside_range_is_rejected():
    pair = sample_coupled_pair(50, seed=3)
    assert ev_diff_report(pair, 5).per_index_diffs.shape == (5,)
    with pytest.raises(InvalidArgumentError):
        ev_diff_report(pair, 6)
    with pytest.raises(InvalidArgumentError):
        ev_diff_report(pair, 0)


def test_k_max_is_capped_by_the_size():
    pair = sample_coupled_pair(3, seed=3)
    with pytest.raises(InvalidArgumentError):
        ev_diff_report(pair, 4)


def test_stieltjes_window():
    lo, hi = stieltjes_window(1000)
    assert lo == pytest.approx(1000**0.1 / 1000)
    assert hi == pytest.approx(1000**-0.1)


def test_stieltjes_diff_respects_the_window():
    pair = sample_coupled_pair(200, seed=11)
    inside = stieltjes_diff(pair, [2.0 + 0.05j, 0.3j])
    assert inside.shape == (2,)
    assert np.all(np.isfinite(inside))

    with pytest.raises(InvalidArgumentError):
        stieltjes_diff(pair, [2.0 + 1.0j])
    with pytest.raises(InvalidArgumentError):
        stieltjes_diff(pair, [2.0 + 0.001j])

    outside = stieltjes_diff(pair, [2.0 + 1.0j], check_window=False)
    assert abs(outside[0]) < 0.05


def test_far_field_difference_needs_the_window_lifted():
    pair = sample_coupled_pair(300, seed=5)
    with pytest.raises(InvalidArgumentError):
        stieltjes_diff(pair, [1000j])
    far = stieltjes_diff(pair, [1000j, -3.0 + 500j], check_window=False)
    assert np.all(np.abs(far) <= 1e-4)


def test_pair_without_diagonal_has_no_difference():
    h = np.array([[0.0, 0.4, -0.1], [0.4, 0.0, 0.7], [-0.1, 0.7, 0.0]])
    pair = coupled_pair_from_matrix(h, seed=0)
    assert pair.max_abs_diagonal == 0.0
    diffs = stieltjes_diff(pair, [0.5 + 0.5j, 2.0 + 0.9j], check_window=False)
    np.testing.assert_allclose(diffs, 0.0, atol=1e-15)


def test_stieltjes_bound():
    bound = stieltjes_bound(1000, 2.0 + 0.02j)
    assert isinstance(bound, float)
    assert bound > 0
    grid = stieltjes_bound(1000, [0.1j, 0.2j])
    assert grid.shape == (2,)
    assert grid[0] > grid[1]
    with pytest.raises(InvalidArgumentError):
        stieltjes_bound(1000, 2.0)


def test_weyl_check_on_a_sampled_pair():
    assert weyl_check(sample_coupled_pair(80, seed=5))


def test_weyl_check_detects_shifts_beyond_the_diagonal():
    pair = CoupledPair(
        spectrum_h=spectrum_from_values([1.0, 0.0, -1.0]),
        spectrum_m=spectrum_from_values([0.5, 0.0, -0.5]),
        seed=0,
        diagonal=np.zeros(3),
    )
    assert not weyl_check(pair)


def test_coupled_pair_requires_matching_sizes():
    with pytest.raises(InvalidArgumentError):
        CoupledPair(
            spectrum_h=spectrum_from_values([1.0, 0.0]),
            spectrum_m=spectrum_from_values([0.5, 0.0, -0.5]),
            seed=0,
            diagonal=np.zeros(2),
        )


def test_trial_report_serializes():
    report = zerodiag_trial(200, seed=21, z_grid=[2.0 + 0.05j])
    assert report.k_max == 5
    data = report.to_dict()
    assert data["n"] == 200
    assert len(data["per_index_diffs"]) == 5
    assert data["z_grid"] == [[2.0, 0.05]]
    assert len(data["stieltjes_diffs"]) == 1
    assert all(d <= report.max_abs_diagonal + 1e-12 for d in data["per_index_diffs"])


def test_trial_without_grid_has_no_stieltjes_part():
    report = zerodiag_trial(60, seed=2, k_max=2)
    assert report.per_index_diffs.shape == (2,)
    assert report.z_grid.size == 0
    assert report.to_dict()["stieltjes_diffs"] == []


def test_top_eigenvalue_shift_is_small():
    report = zerodiag_trial(1000, seed=4)
    assert report.per_index_diffs[0] < 0.05
