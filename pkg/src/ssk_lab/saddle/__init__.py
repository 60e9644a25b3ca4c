"""Steepest-descent machinery: phase functions, contours, keyhole integrals."""

from .phase import SaddleFrame, c_beta, phase_G, phase_G_derivative, phase_G_difference, phase_g
from .quadrature import ContourSpec, VerticalLineResult, vertical_line_integral
from .contour import contour_depth, eta_of_E, gamma1, gamma2, gamma3, gamma_hat
from .keyhole import keyhole_closed_form, keyhole_exponent, keyhole_integrand, keyhole_quadrature

__all__ = [
    "SaddleFrame",
    "c_beta",
    "phase_G",
    "phase_G_derivative",
    "phase_G_difference",
    "phase_g",
    "ContourSpec",
    "VerticalLineResult",
    "vertical_line_integral",
    "contour_depth",
    "eta_of_E",
    "gamma1",
    "gamma2",
    "gamma3",
    "gamma_hat",
    "keyhole_closed_form",
    "keyhole_exponent",
    "keyhole_integrand",
    "keyhole_quadrature",
]
