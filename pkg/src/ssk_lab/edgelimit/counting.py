from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from utils.runners.seeding import ROLE_SPECTRUM, derive_seed

from ..ensembles.sampler import sample_spectrum, top_eigenvalues
from ..enums import EnsembleKind
from ..errors import InvalidArgumentError

"""Edge counting function X(T) = #{i : λᵢ ≥ 2 − T·n^{−2/3}}.

Reference curves: mean (2/(3π))T^{3/2}; GUE variance (3/(4π²)) log T; the
GOE variance envelope 3(log T + 1) used as an upper bound.
"""

logger = logging.getLogger(__name__)

AIRY1_PROXY = "AIRY1"
MIN_TRIALS = 100
# the grid must stay below n^{2/3 − WINDOW_MARGIN}
WINDOW_MARGIN = 0.1


def reference_mean(t: ArrayLike) -> np.ndarray:
    return 2.0 / (3.0 * math.pi) * np.asarray(t, dtype=float) ** 1.5


def gue_reference_variance(t: ArrayLike) -> np.ndarray:
    return 3.0 / (4.0 * math.pi**2) * np.log(np.asarray(t, dtype=float))


def goe_variance_envelope(t: ArrayLike) -> np.ndarray:
    return 3.0 * (np.log(np.asarray(t, dtype=float)) + 1.0)


def counting_window(n: int) -> tuple[float, float]:
    """Admissible range [1, n^{2/3 − 0.1}] of T."""
    return 1.0, float(n ** (2.0 / 3.0 - WINDOW_MARGIN))


def resolve_kind(kind: EnsembleKind | str) -> tuple[EnsembleKind, str]:
    """(sampler kind, label); the Airy₁ proxy samples tridiagonal GOE."""
    if isinstance(kind, str) and kind.strip().upper() == AIRY1_PROXY:
        return EnsembleKind.GOE_TRIDIAG, AIRY1_PROXY
    parsed = EnsembleKind.parse(kind)
    return parsed, parsed.value


@dataclass(frozen=True)
class CountingStats:
    t_grid: np.ndarray
    empirical_mean: np.ndarray
    empirical_var: np.ndarray
    reference_mean: np.ndarray
    reference_variance: np.ndarray
    trials: int
    ensemble: str
    n: int

    @property
    def mean_offset(self) -> np.ndarray:
        return self.empirical_mean - self.reference_mean

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "t": self.t_grid,
                "empirical_mean": self.empirical_mean,
                "empirical_var": self.empirical_var,
                "reference_mean": self.reference_mean,
                "reference_variance": self.reference_variance,
            }
        )


def validate_t_grid(n: int, t_grid: ArrayLike) -> np.ndarray:
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidArgumentError("t_grid must be a non-empty 1-d sequence")
    lo, hi = counting_window(n)
    if np.any(grid < lo) or np.any(grid > hi):
        raise InvalidArgumentError(f"t_grid must lie within [{lo:g}, {hi:.4g}] for n={n}")
    return grid


def edge_counts(values: ArrayLike, n: int, t_grid: ArrayLike) -> np.ndarray:
    """X(T) for each T in *t_grid*; *values* need only hold the top of the spectrum."""
    lam = np.sort(np.asarray(values, dtype=float))
    thresholds = 2.0 - np.asarray(t_grid, dtype=float) * n ** (-2.0 / 3.0)
    return lam.size - np.searchsorted(lam, thresholds, side="left")


def counting_trial(kind: EnsembleKind | str, n: int, t_grid: ArrayLike, seed: int) -> np.ndarray:
    """Counts on one realization; only the top of the spectrum is computed."""
    sampler_kind, _ = resolve_kind(kind)
    grid = np.asarray(t_grid, dtype=float)
    lowest = 2.0 - float(grid.max()) * n ** (-2.0 / 3.0)
    k = min(n, int(math.ceil(2.0 * float(reference_mean(grid.max())))) + 20)
    top = top_eigenvalues(sampler_kind, n, seed, k)
    if k < n and top[-1] >= lowest:
        # more eigenvalues above the lowest threshold than budgeted
        top = sample_spectrum(sampler_kind, n, seed).eigenvalues
    return edge_counts(top, n, grid)


def counting_stats_from_counts(
    counts: Sequence[ArrayLike],
    t_grid: ArrayLike,
    ensemble: EnsembleKind | str,
    n: int,
) -> CountingStats:
    grid = np.asarray(t_grid, dtype=float)
    table = np.asarray(counts, dtype=float).reshape(-1, grid.size)
    trials = table.shape[0]
    if trials < 2:
        raise InvalidArgumentError("counting statistics need at least two trials")
    sampler_kind, label = resolve_kind(ensemble)
    reference_variance = (
        gue_reference_variance(grid) if sampler_kind.is_unitary else goe_variance_envelope(grid)
    )
    return CountingStats(
        t_grid=grid,
        empirical_mean=table.mean(axis=0),
        empirical_var=table.var(axis=0, ddof=1),
        reference_mean=reference_mean(grid),
        reference_variance=reference_variance,
        trials=trials,
        ensemble=label,
        n=int(n),
    )


def counting_stats(
    kind: EnsembleKind | str,
    n: int,
    t_grid: ArrayLike,
    trials: int,
    seed: int,
) -> CountingStats:
    """Mean and variance of X(T) over *trials* realizations.

    Raises:
        InvalidArgumentError: grid outside [1, n^{2/3−0.1}] or fewer than 100 trials.
    """
    grid = validate_t_grid(n, t_grid)
    if trials < MIN_TRIALS:
        raise InvalidArgumentError(f"counting statistics need at least {MIN_TRIALS} trials, got {trials}")
    counts = [counting_trial(kind, n, grid, derive_seed(seed, t, ROLE_SPECTRUM)) for t in range(trials)]
    stats = counting_stats_from_counts(counts, grid, kind, n)
    logger.info(
        "counting %s n=%d trials=%d max mean offset %.3f",
        stats.ensemble,
        n,
        trials,
        float(np.max(np.abs(stats.mean_offset))),
    )
    return stats


__all__ = [
    "AIRY1_PROXY",
    "CountingStats",
    "counting_stats",
    "counting_stats_from_counts",
    "counting_trial",
    "counting_window",
    "edge_counts",
    "goe_variance_envelope",
    "gue_reference_variance",
    "reference_mean",
    "resolve_kind",
    "validate_t_grid",
]
