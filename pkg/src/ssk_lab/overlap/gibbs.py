from __future__ import annotations

import logging
import math
from typing import List

import numpy as np

from ..ensembles.records import SpectrumSample
from ..enums import MomentMethod
from ..errors import InfeasibleRegimeError, InvalidArgumentError
from .moments import OverlapMoments, q_value

"""Brute-force Gibbs sampler on the sphere.

In the eigenbasis the Hamiltonian is −(N/2)Σλᵢxᵢ² for unit vectors x, so
uniform proposals accepted with probability exp((βN/2)Σ(λᵢ − λ₁)xᵢ²) are
exact Gibbs draws.  Two independent draws give one overlap R₁₂ = x·y.
"""

logger = logging.getLogger(__name__)

MAX_N = 24
MIN_SAMPLES = 1000
MIN_ACCEPTANCE = 1e-6
_ACCEPTANCE_WINDOW = 200_000
_BATCH = 65_536


def _accepted_draws(
    gaps: np.ndarray,
    beta: float,
    n: int,
    needed: int,
    rng: np.random.Generator,
    max_proposals: int,
) -> tuple[np.ndarray, int]:
    """*needed* accepted unit vectors and the number of proposals used."""
    blocks: List[np.ndarray] = []
    accepted = 0
    proposals = 0
    half_beta_n = 0.5 * beta * n
    while accepted < needed:
        g = rng.standard_normal((_BATCH, n))
        x = g / np.linalg.norm(g, axis=1, keepdims=True)
        log_accept = half_beta_n * (x * x) @ gaps
        keep = np.log(rng.random(_BATCH)) < log_accept
        proposals += _BATCH
        if keep.any():
            blocks.append(x[keep])
            accepted += int(keep.sum())
        if proposals >= _ACCEPTANCE_WINDOW and accepted < MIN_ACCEPTANCE * proposals:
            raise InfeasibleRegimeError(
                f"acceptance rate {accepted / proposals:.2e} below {MIN_ACCEPTANCE:g}; "
                "use a smaller n or beta"
            )
        if proposals >= max_proposals and accepted < needed:
            raise InfeasibleRegimeError(
                f"{accepted} of {needed} draws accepted after {proposals} proposals; "
                "use a smaller n or beta, or raise max_proposals"
            )
    return np.concatenate(blocks)[:needed], proposals


def _mean_and_se(values: np.ndarray) -> tuple[float, float]:
    count = values.shape[0]
    mean = math.fsum(values) / count
    spread = float(np.std(values, ddof=1)) if count > 1 else 0.0
    return mean, spread / math.sqrt(count)


def gibbs_mc_oracle(
    spectrum: SpectrumSample,
    beta: float,
    n_samples: int,
    seed: int,
    *,
    max_proposals: int = 200_000_000,
) -> OverlapMoments:
    """Monte Carlo ⟨R₁₂²⟩, ⟨R₁₂⁴⟩, ⟨|R₁₂|⟩ and ⟨(R₁₂² − q²)²⟩ with standard errors.

    Raises:
        InvalidArgumentError: ``n > 24``, ``n_samples < 1000`` or ``beta <= 0``.
        InfeasibleRegimeError: acceptance rate below 1e-6.
    """
    n = spectrum.n
    if beta <= 0:
        raise InvalidArgumentError(f"beta must be positive, got {beta}")
    if n > MAX_N:
        raise InvalidArgumentError(f"Gibbs sampling is limited to n <= {MAX_N}, got {n}")
    if n_samples < MIN_SAMPLES:
        raise InvalidArgumentError(f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    lam = spectrum.eigenvalues
    gaps = lam - lam[0]
    draws, proposals = _accepted_draws(gaps, beta, n, 2 * n_samples, rng, max_proposals)
    overlap = np.einsum("ij,ij->i", draws[:n_samples], draws[n_samples:])
    r2 = overlap * overlap
    q2 = q_value(beta) ** 2
    m2, se_m2 = _mean_and_se(r2)
    m4, se_m4 = _mean_and_se(r2 * r2)
    abs1, se_abs1 = _mean_and_se(np.abs(overlap))
    central4, se_central4 = _mean_and_se((r2 - q2) ** 2)
    rate = 2 * n_samples / proposals
    logger.debug("gibbs oracle n=%d beta=%g acceptance=%.3e m2=%.6f", n, beta, rate, m2)
    return OverlapMoments(
        m2=m2,
        m4=m4,
        central4=central4,
        abs1=abs1,
        method=MomentMethod.MONTE_CARLO,
        err=se_m2,
        beta=float(beta),
        n=n,
        seed=seed,
        extras={
            "se_m4": se_m4,
            "se_abs1": se_abs1,
            "se_central4": se_central4,
            "acceptance_rate": rate,
            "proposals": proposals,
            "n_samples": n_samples,
        },
    )


__all__ = ["gibbs_mc_oracle", "MAX_N", "MIN_SAMPLES", "MIN_ACCEPTANCE"]
