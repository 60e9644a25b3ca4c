import math

import pytest

from ssk_lab.enums import MomentMethod
from ssk_lab.ensembles import spectrum_from_values
from ssk_lab.errors import InvalidArgumentError, OutOfRegimeError, PreconditionViolatedError
from ssk_lab.overlap import (
    FOURTH_MOMENT_FORMS,
    central_fourth,
    expansion_terms,
    overlap_expansion,
    overlap_keyhole_leading,
    q_value,
)
from ssk_lab.spectral import classical_locations


def test_expansion_reduces_to_q_squared_at_the_limit():
    report = expansion_terms(-1.0, 0.0, 2.0, 100)
    q = q_value(2.0)
    assert report.m2 == pytest.approx(q * q)
    assert report.central4 == 0.0
    assert report.abs1 == pytest.approx(q)
    assert report.m4_direct == pytest.approx(q**4)


def test_expansion_terms_formulae():
    beta, n = 1.5, 200
    report = expansion_terms(-0.9, 50.0, beta, n, delta=0.1, eps1=0.02)
    x = 0.1
    assert report.term_linear == pytest.approx(2 * 0.5 / beta**2 * x)
    assert report.term_mprime == pytest.approx(-0.25 / beta**2)
    assert report.term_square == pytest.approx(x * x / beta**2)
    assert report.predicted_error_scale == pytest.approx(n ** (0.3 + 0.2 - 1.0))
    # the two fourth-moment forms differ only in the m̃′ coefficient
    diff = report.central4_stated - report.central4_consistent
    assert diff == pytest.approx(8 * 0.25 * 0.25 * (1 / beta**2 - 1 / beta**4))


def test_fourth_moment_form_selection():
    stated = expansion_terms(-0.9, 50.0, 1.5, 200)
    consistent = expansion_terms(-0.9, 50.0, 1.5, 200, fourth_moment_form="consistent")
    assert FOURTH_MOMENT_FORMS == ("stated", "consistent")
    assert stated.central4 == stated.central4_stated
    assert consistent.central4 == consistent.central4_consistent
    with pytest.raises(InvalidArgumentError):
        expansion_terms(-0.9, 50.0, 1.5, 200, fourth_moment_form="other")


def test_expansion_regime_checks():
    with pytest.raises(OutOfRegimeError):
        expansion_terms(-1.0, 0.0, 1.0, 10)
    with pytest.raises(InvalidArgumentError):
        expansion_terms(-1.0, 0.0, 2.0, 0)


def test_expansion_on_a_rigid_spectrum():
    spectrum = spectrum_from_values(classical_locations(150).gamma, "GOE_ZERO_DIAG", seed=3)
    moments, report = overlap_expansion(spectrum, 1.5)
    assert moments.method is MomentMethod.EXPANSION
    assert not report.forced
    assert moments.extras["event_f"] is True
    assert moments.m2 == pytest.approx(report.m2)
    assert moments.central4 == pytest.approx(central_fourth(moments.m2, moments.m4, 1.5))
    assert math.isfinite(moments.err)


def test_expansion_off_event_f_requires_force():
    gamma = classical_locations(150).gamma.copy()
    gamma[0] = gamma[1] + 1e-9  # collapse the top gap
    spectrum = spectrum_from_values(gamma)
    with pytest.raises(PreconditionViolatedError):
        overlap_expansion(spectrum, 1.5)
    moments, report = overlap_expansion(spectrum, 1.5, force=True)
    assert report.forced and not report.event_f
    assert moments.err == math.inf


@pytest.mark.parametrize("beta", [1.1, 2.0, 5.0])
def test_keyhole_leading_is_exact_for_one_spin(beta):
    moments = overlap_keyhole_leading(spectrum_from_values([0.0]), beta)
    assert moments.method is MomentMethod.KEYHOLE_LEADING
    assert moments.m2 == pytest.approx(1.0, abs=1e-12)
    assert math.isnan(moments.err)
