from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike

from ..ensembles.records import SpectrumSample
from ..enums import XiEstimator
from ..errors import DegenerateSpectrumError, InvalidArgumentError

"""Estimators of the edge variable Ξ.

FULL_SPECTRUM: N^{1/3}((1/N) Σ_{j≥2} 1/(λ₁ − λⱼ) − 1).
CUTOFF: Σ_{j=2}^{n} 1/(χⱼ − χ₁) − (2/π)(3πn/2)^{1/3} with χⱼ = N^{2/3}(2 − λⱼ),
the correction being (1/π)∫₀^{T} x^{−1/2} dx at T = (3πn/2)^{2/3}.
"""

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class XiEstimate:
    value: float
    estimator: XiEstimator
    n_matrix: int
    cutoff: Optional[int]
    seed: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "estimator": self.estimator.value,
            "n_matrix": self.n_matrix,
            "cutoff": self.cutoff,
            "seed": self.seed,
        }


def correction_horizon(cutoff: int) -> float:
    """T = (3π·cutoff/2)^{2/3}, where the Airy₁ density has mass *cutoff*."""
    return (1.5 * math.pi * cutoff) ** (2.0 / 3.0)


def xi_correction(cutoff: int) -> float:
    """(2/π)(3π·cutoff/2)^{1/3} = (1/π)∫₀^T x^{−1/2} dx."""
    return 2.0 * math.sqrt(correction_horizon(cutoff)) / math.pi


def xi_cutoff_from_top(top: ArrayLike, n_matrix: int, cutoff: int, seed: int = 0) -> XiEstimate:
    """CUTOFF estimator from the *cutoff* largest eigenvalues (descending)."""
    values = np.asarray(top, dtype=float)
    if cutoff < 1:
        raise InvalidArgumentError(f"cutoff must be at least 1, got {cutoff}")
    if cutoff > 1 and cutoff >= n_matrix:
        raise InvalidArgumentError(f"cutoff must be below n_matrix={n_matrix}, got {cutoff}")
    if values.shape[0] < cutoff:
        raise InvalidArgumentError(f"need {cutoff} top eigenvalues, got {values.shape[0]}")
    chi = n_matrix ** (2.0 / 3.0) * (2.0 - values[:cutoff])
    spacings = chi[1:] - chi[0]
    if np.any(spacings <= 0):
        raise DegenerateSpectrumError("top eigenvalue is not simple")
    value = math.fsum(1.0 / spacings) - xi_correction(cutoff)
    return XiEstimate(value, XiEstimator.CUTOFF, int(n_matrix), int(cutoff), int(seed))


def xi_estimate(
    spectrum: SpectrumSample,
    estimator: XiEstimator | str = XiEstimator.FULL_SPECTRUM,
    cutoff: Optional[int] = None,
) -> XiEstimate:
    """Ξ̂ on one spectrum.

    Raises:
        DegenerateSpectrumError: λ₁ = λ₂.
        InvalidArgumentError: missing or out-of-range cutoff.
    """
    estimator = XiEstimator.parse(estimator)
    n = spectrum.n
    if estimator is XiEstimator.CUTOFF:
        if cutoff is None:
            raise InvalidArgumentError("the CUTOFF estimator needs a cutoff")
        if cutoff > 1:
            spectrum.require_simple_top()
        return xi_cutoff_from_top(spectrum.eigenvalues, n, cutoff, spectrum.seed)
    if n < 2:
        raise InvalidArgumentError("the full-spectrum estimator needs at least two eigenvalues")
    spectrum.require_simple_top()
    lam = spectrum.eigenvalues
    inverse_gaps = math.fsum(1.0 / (lam[0] - lam[1:])) / n
    value = n ** (1.0 / 3.0) * (inverse_gaps - 1.0)
    return XiEstimate(value, XiEstimator.FULL_SPECTRUM, n, None, spectrum.seed)


__all__ = [
    "XiEstimate",
    "correction_horizon",
    "xi_correction",
    "xi_cutoff_from_top",
    "xi_estimate",
]
