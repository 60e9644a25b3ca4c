import numpy as np
import pytest

from ssk_lab.edgelimit import mainconv_from_samples, mainconv_test, mainconv_trial
from ssk_lab.edgelimit.mainconv import b_scale, check_regime
from ssk_lab.errors import InvalidArgumentError, OutOfRegimeError


def test_identical_samples_pick_the_positive_sign():
    a = [0.5, 1.0, 2.0, 3.0]
    report = mainconv_from_samples(1.5, 250, 1000, a, a)
    assert report.ks_plus == 0.0
    assert report.ks_minus == pytest.approx(1.0)
    assert report.winning_sign == 1
    assert report.best_ks == 0.0


def test_mirrored_samples_pick_the_negative_sign():
    a = np.array([0.5, 1.0, 2.0, 3.0])
    report = mainconv_from_samples(1.5, 250, 1000, a, -a)
    assert report.ks_minus == 0.0
    assert report.winning_sign == -1
    data = report.to_dict()
    assert data["trials_used"] == 4
    assert data["winning_sign"] == -1
    assert data["observable"] == "m2"


def test_b_scale():
    assert b_scale(2.0, "m2") == pytest.approx(0.5)
    assert b_scale(2.0, "abs1") == pytest.approx(0.5)
    assert b_scale(1.5, "m2") == pytest.approx(2.0 * 0.5 / 2.25)


def test_regime_checks():
    check_regime(1.5, 250, 1000, "m2", True)
    check_regime(1.5, 30, 60, "m2", False)
    with pytest.raises(OutOfRegimeError):
        check_regime(1.0, 250, 1000, "m2", True)
    with pytest.raises(InvalidArgumentError):
        check_regime(1.5, 250, 1000, "m4", True)
    with pytest.raises(InvalidArgumentError):
        check_regime(1.5, 100, 1000, "m2", True)
    with pytest.raises(InvalidArgumentError):
        check_regime(1.5, 250, 500, "m2", True)
    with pytest.raises(InvalidArgumentError):
        check_regime(1.5, 1, 60, "m2", False)


def test_trial_is_deterministic():
    first = mainconv_trial(1.5, 20, 40, master_seed=3, trial=1)
    second = mainconv_trial(1.5, 20, 40, master_seed=3, trial=1)
    assert first == second
    assert mainconv_trial(1.5, 20, 40, master_seed=3, trial=2) != first


@pytest.mark.parametrize("observable", ["m2", "abs1"])
def test_small_run_without_regime_enforcement(observable):
    report = mainconv_test(1.5, 30, 60, 3, seed=0, observable=observable, enforce_regime=False)
    assert report.a_samples.size + report.failures == 3
    assert 0.0 <= report.ks_plus <= 1.0
    assert 0.0 <= report.ks_minus <= 1.0
    assert report.winning_sign in (1, -1)


def test_regime_is_enforced_by_default():
    with pytest.raises(InvalidArgumentError):
        mainconv_test(1.5, 30, 60, 3, seed=0)
