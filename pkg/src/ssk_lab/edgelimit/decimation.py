from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from utils.reporting.metrics import ks_statistic
from utils.runners.seeding import ROLE_GOE_N, ROLE_GOE_N1, ROLE_GUE, derive_seed

from ..ensembles.sampler import sample_spectrum
from ..enums import EnsembleKind
from ..errors import InvalidArgumentError

"""Superposition–decimation check: GUE_n equals in law the even-indexed
points (2nd, 4th, …) of the superposition of independent GOE_n and
GOE_{n+1} spectra.

The identity holds for matrices with a common entry variance, so GOE_{n+1}
eigenvalues (normalized by n+1) are rescaled by √((n+1)/n) before the
superposition, i.e. every spectrum is measured on the N^{−2/3} edge scale
of the GOE_n matrix.
"""

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000
DEFAULT_K_MAX = 5
DEFAULT_T_GRID = (0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class DecimationTrial:
    """One draw: top even-decimated points, top GUE points, edge counts."""

    even_top: np.ndarray
    gue_top: np.ndarray
    superposition_counts: np.ndarray
    goe_n_counts: np.ndarray
    goe_n1_counts: np.ndarray
    gue_counts: np.ndarray

    @property
    def decimated_counts(self) -> np.ndarray:
        """#{even points above threshold} = floor(#{superposition above} / 2)."""
        return self.superposition_counts // 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "even_top": self.even_top.tolist(),
            "gue_top": self.gue_top.tolist(),
            "superposition_counts": self.superposition_counts.tolist(),
            "goe_n_counts": self.goe_n_counts.tolist(),
            "goe_n1_counts": self.goe_n1_counts.tolist(),
            "gue_counts": self.gue_counts.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DecimationTrial":
        return cls(
            even_top=np.asarray(data["even_top"], dtype=float),
            gue_top=np.asarray(data["gue_top"], dtype=float),
            superposition_counts=np.asarray(data["superposition_counts"], dtype=int),
            goe_n_counts=np.asarray(data["goe_n_counts"], dtype=int),
            goe_n1_counts=np.asarray(data["goe_n1_counts"], dtype=int),
            gue_counts=np.asarray(data["gue_counts"], dtype=int),
        )


@dataclass(frozen=True)
class DecimationReport:
    n: int
    trials: int
    ks_per_index: List[float]
    ks_counting: List[float]
    t_grid: List[float]
    mean_gue_counts: List[float]
    mean_half_goe_counts: List[float]
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def max_ks(self) -> float:
        return max(self.ks_per_index + self.ks_counting)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "trials": self.trials,
            "ks_per_index": self.ks_per_index,
            "ks_counting": self.ks_counting,
            "t_grid": self.t_grid,
            "mean_gue_counts": self.mean_gue_counts,
            "mean_half_goe_counts": self.mean_half_goe_counts,
            **self.extras,
        }


def even_decimation(first: ArrayLike, second: ArrayLike) -> np.ndarray:
    """2nd, 4th, 6th, … largest points of the union (descending)."""
    union = np.sort(np.concatenate([np.asarray(first, float), np.asarray(second, float)]))[::-1]
    return union[1::2]


def _above(values: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    ordered = np.sort(values)
    return ordered.size - np.searchsorted(ordered, thresholds, side="left")


def decimation_trial(
    n: int,
    master_seed: int,
    trial: int,
    *,
    k_max: int = DEFAULT_K_MAX,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
    match_variance: bool = True,
) -> DecimationTrial:
    goe_n = sample_spectrum(EnsembleKind.GOE_DENSE, n, derive_seed(master_seed, trial, ROLE_GOE_N)).eigenvalues
    goe_n1 = sample_spectrum(
        EnsembleKind.GOE_DENSE, n + 1, derive_seed(master_seed, trial, ROLE_GOE_N1)
    ).eigenvalues
    if match_variance:
        goe_n1 = goe_n1 * math.sqrt((n + 1) / n)
    gue = sample_spectrum(EnsembleKind.GUE_DENSE, n, derive_seed(master_seed, trial, ROLE_GUE)).eigenvalues
    k = min(k_max, n)
    thresholds = 2.0 - np.asarray(t_grid, dtype=float) * n ** (-2.0 / 3.0)
    superposition = np.concatenate([goe_n, goe_n1])
    return DecimationTrial(
        even_top=even_decimation(goe_n, goe_n1)[:k],
        gue_top=gue[:k],
        superposition_counts=_above(superposition, thresholds),
        goe_n_counts=_above(goe_n, thresholds),
        goe_n1_counts=_above(goe_n1, thresholds),
        gue_counts=_above(gue, thresholds),
    )


def decimation_report(
    n: int,
    trials: Sequence[DecimationTrial],
    t_grid: Sequence[float] = DEFAULT_T_GRID,
) -> DecimationReport:
    """Per-index and counting KS distances plus the coupled-mean relation."""
    if not trials:
        raise InvalidArgumentError("decimation report needs at least one trial")
    even = np.vstack([t.even_top for t in trials])
    gue = np.vstack([t.gue_top for t in trials])
    decimated = np.vstack([t.decimated_counts for t in trials])
    gue_counts = np.vstack([t.gue_counts for t in trials])
    goe_mean = 0.5 * (
        np.vstack([t.goe_n_counts for t in trials]).mean(axis=0)
        + np.vstack([t.goe_n1_counts for t in trials]).mean(axis=0)
    )
    return DecimationReport(
        n=int(n),
        trials=len(trials),
        ks_per_index=[ks_statistic(even[:, j], gue[:, j]) for j in range(even.shape[1])],
        ks_counting=[ks_statistic(decimated[:, j], gue_counts[:, j]) for j in range(decimated.shape[1])],
        t_grid=[float(t) for t in t_grid],
        mean_gue_counts=gue_counts.mean(axis=0).tolist(),
        mean_half_goe_counts=goe_mean.tolist(),
    )


def fr_decimation_check(
    n: int,
    trials: int,
    seed: int,
    *,
    k_max: int = DEFAULT_K_MAX,
    t_grid: Optional[Sequence[float]] = None,
    match_variance: bool = True,
    min_trials: int = MIN_TRIALS,
) -> DecimationReport:
    """KS distances between Even(GOE_n ∪ GOE_{n+1}) and GUE_n.

    Raises:
        InvalidArgumentError: ``n < 1`` or fewer than *min_trials* trials.
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if trials < min_trials:
        raise InvalidArgumentError(f"need at least {min_trials} trials, got {trials}")
    grid = tuple(t_grid) if t_grid is not None else DEFAULT_T_GRID
    draws = [
        decimation_trial(n, seed, t, k_max=k_max, t_grid=grid, match_variance=match_variance)
        for t in range(trials)
    ]
    report = decimation_report(n, draws, grid)
    logger.info("decimation n=%d trials=%d max KS %.4f", n, trials, report.max_ks)
    return report


__all__ = [
    "DecimationReport",
    "DecimationTrial",
    "decimation_report",
    "decimation_trial",
    "even_decimation",
    "fr_decimation_check",
]
