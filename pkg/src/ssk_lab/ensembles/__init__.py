"""Random-matrix samplers and spectrum containers."""

from .records import CoupledPair, SpectrumSample, spectrum_from_values
from .sampler import (
    MinorInterlacing,
    coupled_pair_from_matrix,
    minor_interlacing,
    sample_coupled_pair,
    sample_spectrum,
    top_eigenvalues,
)

__all__ = [
    "CoupledPair",
    "SpectrumSample",
    "spectrum_from_values",
    "MinorInterlacing",
    "coupled_pair_from_matrix",
    "minor_interlacing",
    "sample_coupled_pair",
    "sample_spectrum",
    "top_eigenvalues",
]
