from __future__ import annotations

import math
from typing import Any, Dict, Iterable, Sequence, Tuple

import numpy as np
from scipy.stats import ks_2samp

"""Order-independent statistics for experiment summaries.

Every reduction sorts its input first and sums with :func:`math.fsum`, so a
summary does not depend on the order in which parallel trials finished.
"""

QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95, 0.99)


def _as_sorted(values: Iterable[float]) -> np.ndarray:
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    return np.sort(arr.ravel())


def ks_statistic(sample_a: Sequence[float], sample_b: Sequence[float]) -> float:
    """Two-sample Kolmogorov–Smirnov sup-distance between empirical CDFs.

    Raises:
        ValueError: either sample is empty.
    """
    a = _as_sorted(sample_a)
    b = _as_sorted(sample_b)
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_statistic needs two non-empty samples")
    return float(ks_2samp(a, b).statistic)


def summarize(values: Iterable[float]) -> Dict[str, Any]:
    """count / mean / std / min / max and a fixed set of quantiles."""
    arr = _as_sorted(values)
    count = int(arr.size)
    if count == 0:
        return {"count": 0}
    mean = math.fsum(arr) / count
    std = math.sqrt(math.fsum((arr - mean) ** 2) / (count - 1)) if count > 1 else 0.0
    out: Dict[str, Any] = {
        "count": count,
        "mean": mean,
        "std": std,
        "stderr": std / math.sqrt(count),
        "min": float(arr[0]),
        "max": float(arr[-1]),
        "median": float(np.quantile(arr, 0.5)),
    }
    for q in QUANTILES:
        out[f"q{int(round(q * 100)):02d}"] = float(np.quantile(arr, q))
    return out


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x).

    Raises:
        ValueError: fewer than two points or non-positive values.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("loglog_slope needs two aligned sequences of length >= 2")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("loglog_slope needs positive values")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def empirical_cdf(values: Iterable[float], grid: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """P(X <= s) on *grid* with binomial standard errors."""
    arr = _as_sorted(values)
    if arr.size == 0:
        raise ValueError("empirical_cdf needs a non-empty sample")
    cdf = np.searchsorted(arr, np.asarray(grid, dtype=float), side="right") / arr.size
    stderr = np.sqrt(cdf * (1.0 - cdf) / arr.size)
    return cdf, stderr


def fraction(flags: Iterable[bool]) -> float:
    items = [bool(f) for f in flags]
    return sum(items) / len(items) if items else math.nan


__all__ = ["ks_statistic", "summarize", "loglog_slope", "empirical_cdf", "fraction", "QUANTILES"]
