from __future__ import annotations

import logging
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import quad_vec

from ..ensembles.records import SpectrumSample
from ..errors import InvalidArgumentError, NumericFailureError

"""Empirical Stieltjes transform and the Helffer–Sjöstrand trace formula."""

logger = logging.getLogger(__name__)

RealFn = Callable[[np.ndarray], np.ndarray]


def _values(spectrum: SpectrumSample | ArrayLike) -> np.ndarray:
    if isinstance(spectrum, SpectrumSample):
        return spectrum.eigenvalues
    return np.asarray(spectrum, dtype=float).ravel()


def stieltjes(
    spectrum: SpectrumSample | ArrayLike,
    z: complex | ArrayLike,
    *,
    allow_lower: bool = False,
) -> complex | np.ndarray:
    """m_N(z) = (1/N) Σⱼ 1/(λⱼ − z).

    Args:
        spectrum: a SpectrumSample or raw eigenvalues.
        z: a point (or array of points) with Im z > 0.
        allow_lower: also accept Im z < 0 (used for conjugation checks).

    Raises:
        InvalidArgumentError: Im z ≤ 0 (or Im z = 0 with *allow_lower*).
    """
    lam = _values(spectrum)
    zz = np.asarray(z, dtype=complex)
    im = zz.imag
    if allow_lower:
        if np.any(im == 0):
            raise InvalidArgumentError("z must be off the real axis")
    elif np.any(im <= 0):
        raise InvalidArgumentError("stieltjes transform requires Im z > 0")
    out = np.mean(1.0 / (lam[None, :] - zz.reshape(-1, 1)), axis=1)
    if zz.ndim == 0:
        return complex(out[0])
    return out.reshape(zz.shape)


# ------------------------------------------------------------------
# Helffer–Sjöstrand
# ------------------------------------------------------------------


def plateau_cutoff(y: np.ndarray) -> np.ndarray:
    """χ(y): 1 on |y| ≤ 1, 0 on |y| ≥ 2, quintic smoothstep ramp between."""
    t = np.clip(np.abs(y) - 1.0, 0.0, 1.0)
    return 1.0 - t**3 * (10.0 - 15.0 * t + 6.0 * t * t)


def plateau_cutoff_derivative(y: np.ndarray) -> np.ndarray:
    t = np.clip(np.abs(y) - 1.0, 0.0, 1.0)
    return -30.0 * t * t * (1.0 - t) ** 2 * np.sign(y)


def _second_derivative(df: RealFn, h: float = 1e-5) -> RealFn:
    def d2f(x: np.ndarray) -> np.ndarray:
        return (df(x + h) - df(x - h)) / (2.0 * h)

    return d2f


def hs_trace(
    spectrum: SpectrumSample | ArrayLike,
    f: RealFn,
    df: RealFn,
    support: Tuple[float, float],
    *,
    d2f: Optional[RealFn] = None,
    epsabs: float = 1e-11,
    epsrel: float = 1e-10,
    ramp_nodes: int = 48,
    limit: int = 4000,
) -> float:
    """Σᵢ f(λᵢ) recovered from (1/π)∫∫ ∂̄f̃(z) Σᵢ 1/(λᵢ − z) d²z.

    f̃(x + iy) = (f(x) + i y f′(x)) χ(y) is the almost analytic extension, so
    ∂̄f̃ = ½[i y f″(x) χ(y) + (i f(x) − y f′(x)) χ′(y)].  The integrand at
    −y is the conjugate of the one at y, leaving 2·Re of the upper half
    plane.  On 0 < y < 1 (χ = 1, χ′ = 0) the y-integral is done in closed
    form; the ramp 1 ≤ y ≤ 2 uses a Gauss–Legendre rule; the x-integral is
    adaptive with breakpoints at the eigenvalues.

    Args:
        spectrum: eigenvalues.
        f, df: the test function and its derivative (vectorised).
        support: interval outside which f vanishes (to quadrature accuracy).
        d2f: second derivative; central differences of *df* when omitted.

    Raises:
        NumericFailureError: the adaptive x-quadrature did not converge.
    """
    lam = _values(spectrum)
    lo, hi = float(support[0]), float(support[1])
    if not hi > lo:
        raise InvalidArgumentError(f"support must be an interval, got {support}")
    d2f = d2f or _second_derivative(df)

    nodes, weights = np.polynomial.legendre.leggauss(ramp_nodes)
    ys = 1.5 + 0.5 * nodes
    ws = 0.5 * weights
    chi = plateau_cutoff(ys)
    dchi = plateau_cutoff_derivative(ys)

    def integrand(x: float) -> np.ndarray:
        xv = np.array([x])
        fx, dfx, d2fx = float(f(xv)[0]), float(df(xv)[0]), float(d2f(xv)[0])
        d = lam - x
        ad = np.abs(d)
        # 0 < y < 1: Re[½ i y f″/(d − iy)] integrates to −½ f″ (1 − |d| arctan(1/|d|))
        inner = -0.5 * d2fx * (1.0 - ad * np.arctan2(1.0, ad))
        # ramp 1 ≤ y ≤ 2
        dbar = 0.5 * (1j * ys * d2fx * chi + (1j * fx - ys * dfx) * dchi)
        kernel = 1.0 / (d[:, None] - 1j * ys[None, :])
        ramp = np.real(kernel * dbar[None, :]) @ ws
        return inner + ramp

    points = [p for p in lam if lo < p < hi]
    res, err, info = quad_vec(
        integrand,
        lo,
        hi,
        epsabs=epsabs,
        epsrel=epsrel,
        points=points or None,
        limit=limit,
        full_output=True,
    )
    # rounding-limited exits (status 2) are fine once the error meets the target
    target = max(epsabs, epsrel * max(float(np.max(np.abs(res))), 1.0))
    rounding_ok = info.status == 2 and float(err) <= target
    if not info.success and not rounding_ok:
        logger.error("Helffer–Sjöstrand quadrature failed: %s", info.message)
        raise NumericFailureError("Helffer–Sjöstrand quadrature did not converge", achieved_error=float(err))
    return float(2.0 / np.pi * np.sum(res))


__all__ = ["stieltjes", "hs_trace", "plateau_cutoff", "plateau_cutoff_derivative"]
