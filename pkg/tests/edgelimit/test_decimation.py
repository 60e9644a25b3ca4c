import numpy as np
import pytest

from ssk_lab.edgelimit import DecimationTrial, decimation_report, decimation_trial, fr_decimation_check
from ssk_lab.edgelimit.decimation import even_decimation
from ssk_lab.errors import InvalidArgumentError


def test_even_decimation_keeps_every_second_point():
    np.testing.assert_array_equal(even_decimation([3.0, 1.0], [2.0, 0.0, -1.0]), [2.0, 0.0])


def test_trial_is_deterministic_and_round_trips():
    first = decimation_trial(6, master_seed=5, trial=3, k_max=3, t_grid=(1.0, 4.0))
    second = decimation_trial(6, master_seed=5, trial=3, k_max=3, t_grid=(1.0, 4.0))
    assert first.to_dict() == second.to_dict()
    restored = DecimationTrial.from_dict(first.to_dict())
    np.testing.assert_array_equal(restored.even_top, first.even_top)
    assert first.even_top.shape == (3,)
    np.testing.assert_array_equal(first.decimated_counts, first.superposition_counts // 2)


def test_superposition_counts_add_up():
    trial = decimation_trial(10, master_seed=1, trial=0)
    np.testing.assert_array_equal(trial.superposition_counts, trial.goe_n_counts + trial.goe_n1_counts)


def test_report_needs_trials():
    with pytest.raises(InvalidArgumentError):
        decimation_report(4, [])
    with pytest.raises(InvalidArgumentError):
        fr_decimation_check(4, trials=10, seed=0)


@pytest.mark.montecarlo
def test_decimated_goe_pair_matches_gue_in_law():
    report = fr_decimation_check(2, trials=2000, seed=77, k_max=2, min_trials=1000)
    assert report.trials == 2000
    assert len(report.ks_per_index) == 2
    assert report.max_ks < 0.08
