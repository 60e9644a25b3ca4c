"""Numerical laboratory for overlap fluctuations of the spherical 2-spin glass
at low temperature, built on random-matrix edge statistics."""

__version__ = "0.1.0"
