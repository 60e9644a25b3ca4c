from __future__ import annotations

import logging
import math

import numpy as np
from scipy.optimize import brentq

from ..errors import InvalidArgumentError, NumericFailureError
from .phase import SaddleFrame, c_beta

"""The contour equation η(E) and the steepest-descent pieces Γ₁, Γ₂, Γ₃.

All contour nodes are expressed relative to γ: a node ``z`` stands for the
point ``γ + z`` of the spectral plane.  Only the upper half is returned;
each piece is symmetric under complex conjugation.
"""

logger = logging.getLogger(__name__)

KAPPA_MAX = 1.0 / 30.0
# below this |NE|/c_β the root is the leading-order √(3c_β|NE|)
_SMALL_RATIO = 1e-8


def _scaled_root(e: float, c: float) -> float:
    """Root u > 0 of u/c = arg(e + c + iu)."""

    def h(u: float) -> float:
        return u / c - math.atan2(u, e + c)

    upper = c * math.pi
    lower = min(math.sqrt(3.0 * c * abs(e)) / 4.0, upper / 2.0)
    for _ in range(200):
        if h(lower) < 0.0:
            break
        lower *= 0.5
    else:
        raise NumericFailureError(f"eta_of_E: no bracket for N*E={e}")
    try:
        return brentq(h, lower, upper, xtol=1e-15, rtol=1e-14, maxiter=200)
    except (RuntimeError, ValueError) as exc:
        raise NumericFailureError(f"eta_of_E: root finder failed for N*E={e}") from exc


def eta_of_E(E: float, beta: float, n: int) -> float:
    """Unique η ≥ 0 with η(β − 1) = (1/N) arg(E + iη + c_β/N).

    Raises:
        InvalidArgumentError: ``E > 0`` or ``n < 1``.
        OutOfRegimeError: ``beta <= 1``.
        NumericFailureError: the root could not be bracketed.
    """
    c = c_beta(beta)
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if E > 0:
        raise InvalidArgumentError(f"eta_of_E needs E <= 0, got {E}")
    if E == 0:
        return 0.0
    e = n * E
    if abs(e) / c < _SMALL_RATIO:
        return math.sqrt(3.0 * c * abs(e)) / n
    return _scaled_root(e, c) / n


def _check_kappa(kappa: float) -> None:
    if not 0.0 < kappa < KAPPA_MAX:
        raise InvalidArgumentError(f"kappa must lie in (0, 1/30), got {kappa}")


def _num(num: int) -> int:
    if num < 2:
        raise InvalidArgumentError(f"need at least two nodes, got {num}")
    return int(num)


def contour_depth(frame: SaddleFrame, kappa: float) -> float:
    """N^{−1+κ}: how far to the left of γ the pieces reach."""
    _check_kappa(kappa)
    return float(frame.n ** (-1.0 + kappa))


def gamma1(frame: SaddleFrame, kappa: float, num: int = 201) -> np.ndarray:
    """Upper branch of Γ₁ = {E + iη(E) : 0 ≥ E ≥ −N^{−1+κ}}, from γ outwards."""
    depth = contour_depth(frame, kappa)
    energies = np.linspace(0.0, -depth, _num(num))
    etas = np.array([eta_of_E(float(E), frame.beta, frame.n) for E in energies])
    return energies + 1j * etas


def gamma2(frame: SaddleFrame, kappa: float, height: float = 10.0, num: int = 201) -> np.ndarray:
    """Upper vertical Γ₂ from the end of Γ₁ up to Im z = *height*."""
    depth = contour_depth(frame, kappa)
    start = eta_of_E(-depth, frame.beta, frame.n)
    if height <= start:
        raise InvalidArgumentError(f"height {height} below the end of gamma1 ({start:.3e})")
    return -depth + 1j * np.linspace(start, height, _num(num))


def gamma3(frame: SaddleFrame, kappa: float, num: int = 51) -> np.ndarray:
    """Upper segment Γ₃ from the real axis up to the end of Γ₁."""
    depth = contour_depth(frame, kappa)
    top = eta_of_E(-depth, frame.beta, frame.n)
    return -depth + 1j * np.linspace(0.0, top, _num(num))


def gamma_hat(frame: SaddleFrame, kappa: float, num: int = 201) -> np.ndarray:
    """Γ̂ = Γ₁ ∪ Γ₃ traversed from γ along the U and down to the real axis."""
    upper = gamma1(frame, kappa, num)
    closing = gamma3(frame, kappa, max(2, num // 4))[::-1]
    return np.concatenate([upper, closing[1:]])


__all__ = [
    "KAPPA_MAX",
    "eta_of_E",
    "contour_depth",
    "gamma1",
    "gamma2",
    "gamma3",
    "gamma_hat",
]
