from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import brentq

from ..errors import InvalidArgumentError

"""Semicircle law: density, distribution function, Stieltjes transform and
classical locations."""


def semicircle_density(x: ArrayLike) -> np.ndarray | float:
    """ρ_sc(x) = √((4 − x²)₊)/(2π)."""
    x = np.asarray(x, dtype=float)
    out = np.sqrt(np.clip(4.0 - x * x, 0.0, None)) / (2.0 * np.pi)
    return float(out) if out.ndim == 0 else out


def semicircle_cdf(x: ArrayLike) -> np.ndarray | float:
    """∫_{−2}^{x} ρ_sc, clamped to [0, 1] outside [−2, 2]."""
    x = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    out = 0.5 + (x * np.sqrt(4.0 - x * x) / 2.0 + 2.0 * np.arcsin(x / 2.0)) / (2.0 * np.pi)
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def stieltjes_semicircle(z: ArrayLike) -> np.ndarray | complex:
    """m_sc(z) = ∫ ρ_sc(x)/(x − z) dx, with Im m_sc > 0 for Im z > 0."""
    z = np.asarray(z, dtype=complex)
    out = (-z + np.sqrt(z - 2.0) * np.sqrt(z + 2.0)) / 2.0
    return complex(out) if out.ndim == 0 else out


def local_law_bound(n: int, z: complex, eps: float = 0.1) -> float:
    """Averaged local-law scale n^ε/(n·Im z)."""
    eta = complex(z).imag
    if eta <= 0:
        raise InvalidArgumentError(f"Im z must be positive, got {eta}")
    return float(n**eps / (n * eta))


# ------------------------------------------------------------------
# classical locations
# ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClassicalLocations:
    """Edge-oriented semicircle quantiles: ∫_{γᵢ}^{2} ρ_sc = i/n, γ₁ ≥ … ≥ γₙ."""

    n: int
    gamma: np.ndarray


def _quantile_from_top(mass: float) -> float:
    if mass <= 0.0:
        return 2.0
    if mass >= 1.0:
        return -2.0
    target = 1.0 - mass
    return brentq(lambda x: semicircle_cdf(x) - target, -2.0, 2.0, xtol=1e-14, rtol=1e-15, maxiter=200)


@lru_cache(maxsize=32)
def _classical_gamma(n: int) -> np.ndarray:
    gamma = np.array([_quantile_from_top(i / n) for i in range(1, n + 1)], dtype=float)
    gamma.setflags(write=False)
    return gamma


def classical_locations(n: int) -> ClassicalLocations:
    """Classical eigenvalue locations paired with the non-increasing order."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    return ClassicalLocations(n=int(n), gamma=_classical_gamma(int(n)))


def edge_location_asymptotic(i: int, n: int) -> float:
    """Leading edge approximation γᵢ ≈ 2 − (3πi/(2n))^{2/3}."""
    return 2.0 - (3.0 * np.pi * i / (2.0 * n)) ** (2.0 / 3.0)


__all__ = [
    "semicircle_density",
    "semicircle_cdf",
    "stieltjes_semicircle",
    "local_law_bound",
    "ClassicalLocations",
    "classical_locations",
    "edge_location_asymptotic",
]
