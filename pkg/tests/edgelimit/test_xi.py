import math

import numpy as np
import pytest

from ssk_lab.edgelimit import xi_correction, xi_cutoff_from_top, xi_estimate
from ssk_lab.edgelimit.xi import correction_horizon
from ssk_lab.enums import XiEstimator
from ssk_lab.ensembles import sample_spectrum, spectrum_from_values
from ssk_lab.errors import DegenerateSpectrumError, InvalidArgumentError
from ssk_lab.spectral import edge_location_asymptotic


def test_correction_is_the_integral_of_the_edge_density():
    horizon = correction_horizon(10)
    assert horizon == pytest.approx((15.0 * math.pi) ** (2.0 / 3.0))
    assert xi_correction(10) == pytest.approx(2.0 * math.sqrt(horizon) / math.pi)


def test_full_spectrum_estimator_on_three_levels():
    estimate = xi_estimate(spectrum_from_values([1.0, 0.0, -1.0]))
    assert estimate.estimator is XiEstimator.FULL_SPECTRUM
    assert estimate.value == pytest.approx(3 ** (1 / 3) * (0.5 - 1.0))
    assert estimate.cutoff is None


def test_cutoff_estimator_stabilises_on_a_rigid_edge():
    n = 10**6
    top = np.array([edge_location_asymptotic(i, n) for i in range(1, 801)])
    coarse = xi_cutoff_from_top(top, n, 400).value
    fine = xi_cutoff_from_top(top, n, 800).value
    assert abs(coarse - fine) < 0.1


def test_cutoff_of_one_is_just_the_correction():
    estimate = xi_cutoff_from_top([1.9], 100, 1)
    assert estimate.value == pytest.approx(-xi_correction(1))


def test_cutoff_estimator_on_a_sample_matches_top_only_evaluation():
    spectrum = sample_spectrum("GOE_TRIDIAG", 400, seed=31)
    full = xi_estimate(spectrum, "CUTOFF", cutoff=50)
    top_only = xi_cutoff_from_top(spectrum.eigenvalues[:50], 400, 50, seed=31)
    assert full.value == pytest.approx(top_only.value, rel=1e-12)
    assert full.to_dict()["estimator"] == "CUTOFF"


def test_estimator_argument_checks():
    spectrum = sample_spectrum("GOE_TRIDIAG", 50, seed=1)
    with pytest.raises(InvalidArgumentError):
        xi_estimate(spectrum, XiEstimator.CUTOFF)
    with pytest.raises(InvalidArgumentError):
        xi_cutoff_from_top(spectrum.eigenvalues, 50, 0)
    with pytest.raises(InvalidArgumentError):
        xi_cutoff_from_top(spectrum.eigenvalues, 50, 50)
    with pytest.raises(InvalidArgumentError):
        xi_cutoff_from_top(spectrum.eigenvalues[:5], 50, 10)
    with pytest.raises(InvalidArgumentError):
        xi_estimate(spectrum_from_values([0.5]))
    with pytest.raises(DegenerateSpectrumError):
        xi_estimate(spectrum_from_values([1.0, 1.0, 0.0]))
