from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..ensembles.records import SpectrumSample
from ..enums import MomentMethod
from ..errors import InvalidArgumentError, OutOfRegimeError
from .moments import OverlapMoments, q_value

"""Gaussian surrogate for the overlap fluctuation R₁₂² − q²:

    (2(β − 1)/β²)·((1/N) Σ_{j≥2} nⱼ²/(λⱼ − λ₁) + 1),  nⱼ iid N(0, 1).
"""

logger = logging.getLogger(__name__)

_CHUNK = 4096


@dataclass(frozen=True)
class SurrogateSample:
    """Draws of the surrogate with the closed-form mean and variance."""

    samples: np.ndarray
    term_linear: float
    predicted_variance: float
    beta: float
    n: int
    seed: Optional[int]

    @property
    def mean(self) -> float:
        return math.fsum(self.samples) / self.samples.shape[0]

    @property
    def variance(self) -> float:
        return float(np.var(self.samples, ddof=1)) if self.samples.shape[0] > 1 else 0.0

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.samples.shape[0])

    def to_moments(self) -> OverlapMoments:
        """The surrogate read as an estimate of ⟨R₁₂²⟩ = q² + mean."""
        return OverlapMoments(
            m2=q_value(self.beta) ** 2 + self.mean,
            method=MomentMethod.BLDW_HEURISTIC,
            err=self.stderr,
            beta=self.beta,
            n=self.n,
            seed=self.seed,
            extras={
                "surrogate_mean": self.mean,
                "surrogate_variance": self.variance,
                "term_linear": self.term_linear,
                "predicted_variance": self.predicted_variance,
            },
        )


def bldw_heuristic(
    spectrum: SpectrumSample,
    beta: float,
    n_samples: int,
    seed: int,
    *,
    normals: Optional[ArrayLike] = None,
) -> SurrogateSample:
    """Sample the surrogate; *normals* forces the nⱼ (shape ``(N-1,)`` or
    ``(n_samples, N-1)``) instead of drawing them.

    Raises:
        OutOfRegimeError: ``beta <= 1``.
        DegenerateSpectrumError: λ₁ = λ₂.
    """
    if beta <= 1:
        raise OutOfRegimeError(f"the surrogate needs beta > 1, got {beta}")
    if n_samples < 1:
        raise InvalidArgumentError(f"n_samples must be positive, got {n_samples}")
    if spectrum.n < 2:
        raise InvalidArgumentError("the surrogate needs at least two eigenvalues")
    spectrum.require_simple_top()
    n = spectrum.n
    lam = spectrum.eigenvalues
    weights = 1.0 / (lam[1:] - lam[0])
    prefactor = 2.0 * (beta - 1.0) / beta**2
    term_linear = prefactor * (math.fsum(weights) / n + 1.0)
    predicted_variance = prefactor**2 * 2.0 * math.fsum(weights * weights) / n**2

    if normals is not None:
        forced = np.asarray(normals, dtype=float)
        if forced.ndim == 1:
            forced = np.broadcast_to(forced, (n_samples, forced.shape[0]))
        if forced.shape != (n_samples, n - 1):
            raise InvalidArgumentError(f"normals must have shape ({n_samples}, {n - 1}), got {forced.shape}")
        samples = prefactor * ((forced * forced) @ weights / n + 1.0)
    else:
        rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
        parts = []
        for start in range(0, n_samples, _CHUNK):
            rows = min(_CHUNK, n_samples - start)
            draws = rng.standard_normal((rows, n - 1))
            parts.append(prefactor * ((draws * draws) @ weights / n + 1.0))
        samples = np.concatenate(parts)
    return SurrogateSample(
        samples=samples,
        term_linear=term_linear,
        predicted_variance=predicted_variance,
        beta=float(beta),
        n=n,
        seed=seed,
    )


__all__ = ["SurrogateSample", "bldw_heuristic"]
