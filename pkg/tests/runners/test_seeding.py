import numpy as np
import pytest
from scipy import stats

from utils.runners.seeding import (
    ROLE_AIRY,
    ROLE_OVERLAP,
    ROLE_SPECTRUM,
    derive_seed,
)


def test_derive_seed_is_stable():
    assert derive_seed(0, 0) == derive_seed(0, 0, ROLE_SPECTRUM)
    assert derive_seed(42, 7, ROLE_AIRY) == derive_seed(42, 7, ROLE_AIRY)
    assert 0 <= derive_seed(42, 7) < 2**64


def test_distinct_streams_get_distinct_seeds():
    seeds = {derive_seed(3, t, r) for t in range(200) for r in (ROLE_SPECTRUM, ROLE_OVERLAP, ROLE_AIRY)}
    assert len(seeds) == 600


def test_master_seed_matters():
    assert derive_seed(1, 0) != derive_seed(2, 0)


def test_generator_reproduces():
    a = np.random.default_rng(derive_seed(9, 1)).standard_normal(4)
    b = np.random.default_rng(derive_seed(9, 1)).standard_normal(4)
    np.testing.assert_array_equal(a, b)


def test_adjacent_trials_give_independent_streams():
    trials = 2000
    first = np.array([np.random.default_rng(derive_seed(7, t)).random() for t in range(trials)])
    # first draws of consecutive trials: uniform and uncorrelated
    assert stats.kstest(first, "uniform").pvalue > 1e-3
    assert abs(np.corrcoef(first[:-1], first[1:])[0, 1]) < 4.0 / np.sqrt(trials)

    a = np.random.default_rng(derive_seed(7, 10)).standard_normal(5000)
    b = np.random.default_rng(derive_seed(7, 11)).standard_normal(5000)
    assert abs(np.corrcoef(a, b)[0, 1]) < 4.0 / np.sqrt(5000)


@pytest.mark.parametrize("trial, role", [(-1, 0), (0, 256), (0, -1)])
def test_out_of_range_arguments(trial, role):
    with pytest.raises(ValueError):
        derive_seed(0, trial, role)
