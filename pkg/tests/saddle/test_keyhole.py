from types import SimpleNamespace

import numpy as np
import pytest

from ssk_lab.enums import KeyholeKind
from ssk_lab.errors import InvalidArgumentError, NumericFailureError
from ssk_lab.saddle import (
    ContourSpec,
    SaddleFrame,
    keyhole_closed_form,
    keyhole_exponent,
    keyhole_integrand,
    keyhole_quadrature,
    vertical_line_integral,
)
from ssk_lab.saddle.quadrature import ROUNDING_LIMITED, check_quad_vec, tolerance_met


@pytest.mark.parametrize("kind", list(KeyholeKind))
@pytest.mark.parametrize("a,b", [(1.3, 0.7), (0.4, 2.0)])
def test_keyhole_quadrature_matches_closed_form(kind, a, b, tight_spec):
    expected = keyhole_closed_form(kind, a, b)
    value = keyhole_quadrature(keyhole_integrand(kind, a, b), a, b, spec=tight_spec)
    assert value == pytest.approx(expected, rel=1e-8, abs=1e-12)


def test_keyhole_values_are_purely_imaginary():
    for kind in KeyholeKind:
        assert keyhole_closed_form(kind, 1.1, 0.3).real == 0.0


def test_radius_does_not_change_the_integral(tight_spec):
    kind, a, b = KeyholeKind.INV_POW_3_2_Z2, 0.9, 1.2
    f = keyhole_integrand(kind, a, b)
    small = keyhole_quadrature(f, a, b, r=0.01, spec=tight_spec)
    large = keyhole_quadrature(f, a, b, r=0.1, spec=tight_spec)
    assert small == pytest.approx(large, rel=1e-8)


def test_exponent_table():
    assert keyhole_exponent("INV_SQRT") == (0.5, False)
    assert keyhole_exponent(KeyholeKind.INV_POW_5_2_Z2) == (2.5, True)


def test_keyhole_argument_checks():
    with pytest.raises(InvalidArgumentError):
        keyhole_closed_form("INV_SQRT", 0.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        keyhole_closed_form("INV_SQRT", 1.0, -1.0)
    with pytest.raises(InvalidArgumentError):
        keyhole_closed_form("NOT_A_KIND", 1.0, 1.0)
    f = keyhole_integrand("INV_SQRT", 1.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        keyhole_quadrature(f, 1.0, 1.0, r=0.5)
    with pytest.raises(InvalidArgumentError):
        keyhole_quadrature(f, -1.0, 1.0)


def test_vertical_line_deforms_onto_the_keyhole(zero_diag_spectrum, tight_spec):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, 1.5)
    a, b = 1.0, 0.5

    def exponent(z):
        w = np.asarray(z) - frame.gamma
        return a * w - 1.5 * np.log(w + b)

    result = vertical_line_integral(exponent, None, frame, tight_spec)
    expected = keyhole_closed_form(KeyholeKind.INV_POW_3_2, a, b)
    assert result.scalar == pytest.approx(expected, rel=1e-7)
    assert result.cut_height == tight_spec.truncation_height
    assert result.abs_error < 1e-6


def test_vertical_line_without_symmetry_shortcut(zero_diag_spectrum, tight_spec):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, 1.5)

    def exponent(z):
        w = np.asarray(z) - frame.gamma
        return 0.8 * w - 2.5 * np.log(w + 0.3)

    both = vertical_line_integral(exponent, None, frame, tight_spec, real_analytic=False)
    upper = vertical_line_integral(exponent, None, frame, tight_spec)
    assert both.scalar == pytest.approx(upper.scalar, rel=1e-8)


def test_contour_spec_validation():
    with pytest.raises(InvalidArgumentError):
        ContourSpec(panel_target_error=1e-5)
    with pytest.raises(InvalidArgumentError):
        ContourSpec(truncation_height=0.0)
    with pytest.raises(InvalidArgumentError):
        ContourSpec.from_mapping({"panels": 10})
    spec = ContourSpec.from_mapping({"truncation_height": 5.0}, panel_target_error=1e-9)
    assert spec.to_dict()["truncation_height"] == 5.0
    assert spec.panel_target_error == 1e-9


def test_keyhole_known_value():
    expected = np.sqrt(np.pi) * np.exp(-2.0) * 1j / np.sqrt(2.0) * (-0.5 - 4.0 + 8.0)
    assert keyhole_closed_form("INV_POW_3_2_Z2", 2.0, 1.0) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("b", [0.0, 0.5, 1.0, 2.0])
def test_entire_integrand_collapses_to_zero(b, tight_spec):
    assert abs(keyhole_quadrature(lambda z: np.exp(z), 1.0, b, spec=tight_spec)) < 1e-10
    assert abs(keyhole_quadrature(lambda z: np.exp(z), 1.0, b)) < 1e-10


def _quad_info(status):
    return SimpleNamespace(success=status == 0, status=status, message=f"status {status}")


def test_rounding_limited_exit_is_accepted_only_within_target():
    spec = ContourSpec()
    res = np.array([1e-16, -2e-16])
    check_quad_vec(res, 5e-14, _quad_info(ROUNDING_LIMITED), spec, "q")
    check_quad_vec(res, 1.0, _quad_info(0), spec, "q")
    with pytest.raises(NumericFailureError):
        check_quad_vec(res, 1e-3, _quad_info(ROUNDING_LIMITED), spec, "q")
    with pytest.raises(NumericFailureError):
        check_quad_vec(res, 1e-16, _quad_info(1), spec, "q")
    with pytest.raises(NumericFailureError):
        check_quad_vec(np.array([np.nan]), 0.0, _quad_info(ROUNDING_LIMITED), spec, "q")
    # relative target scales with the value
    assert tolerance_met(np.array([1e6]), 1e-5, spec)
    assert not tolerance_met(np.array([1.0]), 1e-5, spec)


def test_vertical_line_is_invariant_under_moving_gamma(zero_diag_spectrum, tight_spec):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, 1.5)
    moved = frame.with_gamma_scale(1.5)
    base = vertical_line_integral(None, None, frame, tight_spec).scalar
    shifted = vertical_line_integral(None, None, moved, tight_spec).scalar
    # un-normalized integrals differ by exp(N(G(γ′) − G(γ))/2)
    rescaled = shifted * np.exp(frame.log_weight(moved.gamma))
    assert rescaled == pytest.approx(base, rel=1e-8)
