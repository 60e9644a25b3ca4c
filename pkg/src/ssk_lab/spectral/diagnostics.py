from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from ..ensembles.records import SpectrumSample
from ..errors import InvalidArgumentError, OutOfRegimeError
from .semicircle import classical_locations

"""Diagnostics on a fixed realization: edge sums m̃, the event F flags,
the top-gap tail and the λ₁ loop identity."""

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------
# edge statistics
# ------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeStatistics:
    """Edge-excluded Stieltjes sums at λ₁ and at γ = λ₁ + c_β/N."""

    m_tilde: float
    m_tilde_prime: float
    m_tilde_at_gamma: float
    m_tilde_prime_at_gamma: float

    def to_dict(self) -> dict[str, float]:
        return {
            "m_tilde": self.m_tilde,
            "m_tilde_prime": self.m_tilde_prime,
            "m_tilde_at_gamma": self.m_tilde_at_gamma,
            "m_tilde_prime_at_gamma": self.m_tilde_prime_at_gamma,
        }


def edge_sums(eigenvalues: np.ndarray, point: float) -> tuple[float, float]:
    """((1/N)Σ_{j≥2} 1/(λⱼ − w), (1/N)Σ_{j≥2} 1/(λⱼ − w)²) at w = *point*."""
    n = eigenvalues.shape[0]
    if n < 2:
        return 0.0, 0.0
    inv = 1.0 / (eigenvalues[1:] - point)
    return float(math.fsum(inv) / n), float(math.fsum(inv * inv) / n)


def edge_statistics(spectrum: SpectrumSample, beta: Optional[float] = None) -> EdgeStatistics:
    """m̃_N and m̃′_N at λ₁ and, when *beta* is given, at γ = λ₁ + c_β/N.

    Raises:
        InvalidArgumentError: fewer than two eigenvalues.
        DegenerateSpectrumError: λ₁ = λ₂.
        OutOfRegimeError: ``beta <= 1``.
    """
    if spectrum.n < 2:
        raise InvalidArgumentError("edge statistics need at least two eigenvalues")
    spectrum.require_simple_top()
    lam = spectrum.eigenvalues
    m_tilde, m_prime = edge_sums(lam, lam[0])
    if beta is None:
        return EdgeStatistics(m_tilde, m_prime, math.nan, math.nan)
    if beta <= 1:
        raise OutOfRegimeError(f"γ-evaluated statistics need beta > 1, got {beta}")
    gamma = lam[0] + 1.0 / ((beta - 1.0) * spectrum.n)
    m_gamma, m_prime_gamma = edge_sums(lam, gamma)
    return EdgeStatistics(m_tilde, m_prime, m_gamma, m_prime_gamma)


# ------------------------------------------------------------------
# event F
# ------------------------------------------------------------------


@dataclass(frozen=True)
class EventFlags:
    delta: float
    eps1: float
    gap_ok: bool
    rigidity_ok: bool
    event_f: bool
    rigidity_constant: float = 1.0


def rigidity_bound(n: int, eps1: float, rigidity_constant: float = 1.0) -> np.ndarray:
    """C·N^{ε₁/10}/(min{i, N+1−i}^{1/3} N^{2/3}) for i = 1..N."""
    i = np.arange(1, n + 1, dtype=float)
    edge_index = np.minimum(i, n + 1 - i)
    return rigidity_constant * n ** (eps1 / 10.0) / (edge_index ** (1.0 / 3.0) * n ** (2.0 / 3.0))


def event_flags(
    spectrum: SpectrumSample,
    delta: float,
    eps1: float,
    *,
    rigidity_constant: float = 1.0,
) -> EventFlags:
    """Evaluate the top-gap and rigidity conditions of event F.

    ``rigidity_constant`` multiplies the rigidity bound; 1 gives the literal
    definition.
    """
    if not 0.0 < delta < 1.0 / 3.0:
        raise InvalidArgumentError(f"delta must lie in (0, 1/3), got {delta}")
    if eps1 <= 0:
        raise InvalidArgumentError(f"eps1 must be positive, got {eps1}")
    if rigidity_constant <= 0:
        raise InvalidArgumentError(f"rigidity_constant must be positive, got {rigidity_constant}")

    n = spectrum.n
    lam = spectrum.eigenvalues
    if n >= 2:
        gap_ok = bool(n ** (2.0 / 3.0) * (lam[0] - lam[1]) > n ** (-delta))
    else:
        gap_ok = True
    gamma = classical_locations(n).gamma
    rigidity_ok = bool(np.all(np.abs(lam - gamma) <= rigidity_bound(n, eps1, rigidity_constant)))
    return EventFlags(
        delta=delta,
        eps1=eps1,
        gap_ok=gap_ok,
        rigidity_ok=rigidity_ok,
        event_f=gap_ok and rigidity_ok,
        rigidity_constant=rigidity_constant,
    )


# ------------------------------------------------------------------
# top-gap tail
# ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GapTail:
    """Empirical CDF of N^{2/3}(λ₁ − λ₂) on a grid with binomial errors."""

    s_grid: np.ndarray
    cdf: np.ndarray
    stderr: np.ndarray
    samples: int
    n: int

    def linear_ratio(self) -> np.ndarray:
        """CDF(s)/s, flat when the small-s tail is linear."""
        return self.cdf / self.s_grid

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"s": self.s_grid, "cdf": self.cdf, "stderr": self.stderr, "ratio": self.linear_ratio()}
        )


def scaled_gaps(samples: Sequence[SpectrumSample]) -> np.ndarray:
    return np.array([s.n ** (2.0 / 3.0) * (s.eigenvalues[0] - s.eigenvalues[1]) for s in samples])


def gap_tail_from_gaps(gaps: ArrayLike, s_grid: ArrayLike, n: int) -> GapTail:
    gaps = np.sort(np.asarray(gaps, dtype=float))
    grid = np.asarray(s_grid, dtype=float)
    if np.any(grid <= 0):
        raise InvalidArgumentError("s_grid must be positive")
    m = gaps.size
    cdf = np.searchsorted(gaps, grid, side="right") / m
    stderr = np.sqrt(cdf * (1.0 - cdf) / m)
    return GapTail(s_grid=grid, cdf=cdf, stderr=stderr, samples=m, n=n)


def gap_tail(samples: Sequence[SpectrumSample], s_grid: ArrayLike, *, min_samples: int = 100) -> GapTail:
    """Empirical CDF of the scaled top gap over *samples* evaluated on *s_grid*.

    Raises:
        InvalidArgumentError: fewer than *min_samples* spectra, or spectra
            from different (kind, n).
    """
    if len(samples) < min_samples:
        raise InvalidArgumentError(f"need at least {min_samples} samples, got {len(samples)}")
    keys = {(s.kind, s.n) for s in samples}
    if len(keys) != 1:
        raise InvalidArgumentError(f"samples mix ensembles/sizes: {sorted((k.value, n) for k, n in keys)}")
    n = samples[0].n
    if n < 2:
        raise InvalidArgumentError("gap tail needs n >= 2")
    return gap_tail_from_gaps(scaled_gaps(samples), s_grid, n)


# ------------------------------------------------------------------
# loop identity E[(1/N)Σ 1/(λ₁ − λⱼ)] = E[λ₁]/2
# ------------------------------------------------------------------


@dataclass(frozen=True)
class LoopIdentity:
    lhs_mean: float
    lhs_stderr: float
    rhs_mean: float
    rhs_stderr: float
    samples: int

    @property
    def difference(self) -> float:
        return self.lhs_mean - self.rhs_mean

    @property
    def stderr(self) -> float:
        return math.hypot(self.lhs_stderr, self.rhs_stderr)


def loop_identity(samples: Sequence[SpectrumSample]) -> LoopIdentity:
    """Monte Carlo sides of E[(1/N)Σ_{j≥2} 1/(λ₁−λⱼ)] = E[λ₁]/2 (GOE_DENSE)."""
    if len(samples) < 2:
        raise InvalidArgumentError("loop identity needs at least two samples")
    lhs = np.array([-edge_sums(s.eigenvalues, s.eigenvalues[0])[0] for s in samples])
    rhs = np.array([s.eigenvalues[0] / 2.0 for s in samples])
    m = len(samples)
    return LoopIdentity(
        lhs_mean=float(math.fsum(np.sort(lhs)) / m),
        lhs_stderr=float(np.std(lhs, ddof=1) / math.sqrt(m)),
        rhs_mean=float(math.fsum(np.sort(rhs)) / m),
        rhs_stderr=float(np.std(rhs, ddof=1) / math.sqrt(m)),
        samples=m,
    )


__all__ = [
    "EdgeStatistics",
    "edge_sums",
    "edge_statistics",
    "EventFlags",
    "rigidity_bound",
    "event_flags",
    "GapTail",
    "scaled_gaps",
    "gap_tail_from_gaps",
    "gap_tail",
    "LoopIdentity",
    "loop_identity",
]
