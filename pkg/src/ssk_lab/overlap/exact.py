from __future__ import annotations

from scipy.special import ive

from ..enums import MomentMethod
from ..errors import InvalidArgumentError
from .moments import OverlapMoments, central_fourth

"""Closed-form overlap moments for N = 2.

On the circle the Gibbs weight is proportional to exp(κ cos 2θ) with
κ = βN(λ₁ − λ₂)/4, so with ρₖ = Iₖ(κ)/I₀(κ):

    ⟨R₁₂²⟩ = (1 + ρ₁²)/2,   ⟨R₁₂⁴⟩ = (3 + 4ρ₁² + ρ₂²)/8.
"""


def two_spin_moments(lambda1: float, lambda2: float, beta: float) -> OverlapMoments:
    if lambda1 < lambda2:
        raise InvalidArgumentError("eigenvalues must be given in decreasing order")
    if beta <= 0:
        raise InvalidArgumentError(f"beta must be positive, got {beta}")
    kappa = beta * 2.0 * (lambda1 - lambda2) / 4.0
    base = ive(0, kappa)
    rho1 = ive(1, kappa) / base
    rho2 = ive(2, kappa) / base
    m2 = 0.5 * (1.0 + rho1 * rho1)
    m4 = (3.0 + 4.0 * rho1 * rho1 + rho2 * rho2) / 8.0
    return OverlapMoments(
        m2=float(m2),
        m4=float(m4),
        central4=float(central_fourth(m2, m4, beta)),
        method=MomentMethod.CONTOUR_EXACT,
        err=0.0,
        beta=float(beta),
        n=2,
        extras={"kappa": kappa},
    )


__all__ = ["two_spin_moments"]
