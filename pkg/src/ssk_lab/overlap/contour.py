from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..ensembles.records import SpectrumSample
from ..enums import MomentMethod
from ..errors import InvalidArgumentError, NumericFailureError
from ..saddle.phase import SaddleFrame
from ..saddle.quadrature import ContourSpec, VerticalLineResult, vertical_line_integral
from .moments import OverlapMoments, central_fourth

"""Exact finite-N overlap moments from the contour representation.

The double contour integrals separate in z and w, so every moment is built
from one vector-valued quadrature along Re z = γ:

    D   = ∫ e^{N(G(z) − G(γ))/2} dz
    Iᵢ  = ∫ e^{N(G(z) − G(γ))/2} / (βN(z − λᵢ)) dz
    Jᵢ  = ∫ e^{N(G(z) − G(γ))/2} / (βN(z − λᵢ))² dz

⟨xᵢ²⟩ = Iᵢ/D for a single replica, so Σᵢ Iᵢ/D = 1 is a free check.
"""

logger = logging.getLogger(__name__)

# |λᵢ − λⱼ| below which Kᵢⱼ falls back to the derivative form
NEAR_DEGENERATE = 1e-10
_ROW_CHUNK = 256
# tolerated |Im| / |Re| of the ratios Iᵢ/D before the result is rejected
_IMAG_TOL = 1e-6


@dataclass(frozen=True)
class ContourIntegrals:
    """Ratios Iᵢ/D and, when requested, Jᵢ/D on one realization."""

    frame: SaddleFrame
    ratios: np.ndarray
    second: Optional[np.ndarray]
    quadrature: VerticalLineResult

    @property
    def relative_error(self) -> float:
        return self.quadrature.abs_error / abs(self.quadrature.value[0])

    @property
    def trace_residual(self) -> float:
        return abs(math.fsum(self.ratios) - 1.0)


def _real_ratios(values: np.ndarray, denominator: complex, what: str) -> np.ndarray:
    ratios = values / denominator
    scale = max(float(np.max(np.abs(ratios.real))), 1e-300)
    if float(np.max(np.abs(ratios.imag))) > _IMAG_TOL * scale:
        raise NumericFailureError(f"{what}/D has a non-negligible imaginary part")
    return ratios.real.copy()


def contour_integrals(
    spectrum: SpectrumSample,
    beta: float,
    spec: Optional[ContourSpec] = None,
    *,
    second_order: bool = False,
    gamma_scale: float = 1.0,
) -> ContourIntegrals:
    """Evaluate D, Iᵢ (and Jᵢ) in one vector quadrature.

    Raises:
        OutOfRegimeError: ``beta <= 1``.
        NumericFailureError: quadrature failure or complex ratios.
    """
    frame = SaddleFrame.from_spectrum(spectrum, beta, gamma_scale=gamma_scale)
    lam = frame.eigenvalues
    scale = frame.beta * frame.n
    n = frame.n

    def factor(z: complex) -> np.ndarray:
        inv = 1.0 / (scale * (z - lam))
        if second_order:
            return np.concatenate(([1.0 + 0j], inv, inv * inv))
        return np.concatenate(([1.0 + 0j], inv))

    try:
        result = vertical_line_integral(None, factor, frame, spec)
    except NumericFailureError as exc:
        exc.seed = spectrum.seed
        raise
    denominator = complex(result.value[0])
    if denominator == 0:
        raise NumericFailureError("vanishing normalization integral", seed=spectrum.seed)
    ratios = _real_ratios(result.value[1 : n + 1], denominator, "I")
    second = _real_ratios(result.value[n + 1 :], denominator, "J") if second_order else None
    return ContourIntegrals(frame=frame, ratios=ratios, second=second, quadrature=result)


def _cross_sum(ratios: np.ndarray, second: np.ndarray, lam: np.ndarray, scale: float) -> float:
    """Σᵢⱼ (Kᵢⱼ/D)² with Kᵢⱼ = (Iᵢ − Iⱼ)/(βN(λᵢ − λⱼ)), Kᵢᵢ = Jᵢ."""
    n = ratios.shape[0]
    partial = []
    for start in range(0, n, _ROW_CHUNK):
        stop = min(start + _ROW_CHUNK, n)
        diff_lam = lam[start:stop, None] - lam[None, :]
        diff_r = ratios[start:stop, None] - ratios[None, :]
        near = np.abs(diff_lam) < NEAR_DEGENERATE
        safe = np.where(near, 1.0, diff_lam)
        block = np.where(near, 0.5 * (second[start:stop, None] + second[None, :]), diff_r / (scale * safe))
        partial.append(math.fsum((block * block).ravel()))
    return math.fsum(partial)


def _moments(
    integrals: ContourIntegrals,
    spectrum: SpectrumSample,
    *,
    with_fourth: bool,
) -> OverlapMoments:
    frame = integrals.frame
    ratios = integrals.ratios
    m2 = math.fsum(ratios * ratios)
    extras = {
        "trace_residual": integrals.trace_residual,
        "quadrature_evaluations": integrals.quadrature.evaluations,
        "tail": integrals.quadrature.tail,
        "gamma": frame.gamma,
    }
    m4 = central4 = None
    if with_fourth:
        second = integrals.second
        assert second is not None
        scale = frame.beta * frame.n
        diagonal = math.fsum(second * second)
        cross = _cross_sum(ratios, second, frame.eigenvalues, scale)
        m4 = 6.0 * diagonal + 3.0 * cross
        central4 = central_fourth(m2, m4, frame.beta)
    return OverlapMoments(
        m2=m2,
        m4=m4,
        central4=central4,
        method=MomentMethod.CONTOUR_EXACT,
        err=3.0 * integrals.relative_error,
        beta=frame.beta,
        n=frame.n,
        seed=spectrum.seed,
        extras=extras,
    )


def _check(spectrum: SpectrumSample) -> None:
    if spectrum.n < 1:  # pragma: no cover - SpectrumSample forbids it
        raise InvalidArgumentError("empty spectrum")


def overlap_m2_contour(
    spectrum: SpectrumSample,
    beta: float,
    spec: Optional[ContourSpec] = None,
    *,
    gamma_scale: float = 1.0,
) -> OverlapMoments:
    """⟨R₁₂²⟩ = Σᵢ (Iᵢ/D)² on one realization."""
    _check(spectrum)
    integrals = contour_integrals(spectrum, beta, spec, gamma_scale=gamma_scale)
    moments = _moments(integrals, spectrum, with_fourth=False)
    logger.debug("m2 contour n=%d beta=%g -> %.12g", spectrum.n, beta, moments.m2)
    return moments


def overlap_m4_contour(
    spectrum: SpectrumSample,
    beta: float,
    spec: Optional[ContourSpec] = None,
    *,
    gamma_scale: float = 1.0,
) -> OverlapMoments:
    """⟨R₁₂⁴⟩ = (6Σᵢ Jᵢ² + 3Σᵢⱼ Kᵢⱼ²)/D², returned with m2 and central4."""
    _check(spectrum)
    integrals = contour_integrals(spectrum, beta, spec, second_order=True, gamma_scale=gamma_scale)
    moments = _moments(integrals, spectrum, with_fourth=True)
    logger.debug("m4 contour n=%d beta=%g -> %.12g", spectrum.n, beta, moments.m4)
    return moments


__all__ = [
    "ContourIntegrals",
    "NEAR_DEGENERATE",
    "contour_integrals",
    "overlap_m2_contour",
    "overlap_m4_contour",
]
