from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence

import pandas as pd

from utils.reporting.metrics import loglog_slope

"""Size sweeps: run one experiment per matrix size and fit a power law.

Examples
--------
>>> from utils.experiments.sweeper import run_size_sweep
>>> sweep = run_size_sweep(lambda n: {"diff1_median": n ** -1.0}, [250, 500, 1000], metric="diff1_median")
>>> round(sweep.slope, 6)
-1.0
"""

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SizeSweep:
    frame: pd.DataFrame
    metric: str
    slope: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "metric": self.metric,
            "slope": self.slope,
            "rows": self.frame.to_dict(orient="records"),
        }


def _run_single(run_fn: Callable[[int], Dict[str, Any]], n: int, metric: str) -> Dict[str, Any]:
    summary = run_fn(n)
    value = summary.get(metric)
    return {"n": int(n), metric: math.nan if value is None else float(value)}


def run_size_sweep(
    run_fn: Callable[[int], Dict[str, Any]],
    n_values: Sequence[int],
    *,
    metric: str,
    workers: int = 1,
) -> SizeSweep:  # noqa: D401
    """Evaluate ``run_fn(n)[metric]`` for each n and fit log(metric) ~ log(n).

    Rows are sorted by n whatever the completion order.  The slope is NaN
    when fewer than two sizes produced a positive finite value.
    """
    if not n_values:
        raise ValueError("n_values must not be empty")
    rows: List[Dict[str, Any]] = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = {pool.submit(_run_single, run_fn, n, metric): n for n in n_values}
        for fut in as_completed(futures):
            n = futures[fut]
            try:
                rows.append(fut.result())
            except Exception as exc:  # pylint: disable=broad-except
                logger.exception("sweep point n=%d failed: %s", n, exc)
                rows.append({"n": int(n), metric: math.nan, "error": str(exc)})

    df = pd.DataFrame(rows).sort_values("n", kind="mergesort").reset_index(drop=True)
    usable = df[(df[metric] > 0) & df[metric].map(math.isfinite)]
    slope = math.nan
    if len(usable) >= 2:
        slope = loglog_slope(usable["n"].to_numpy(float), usable[metric].to_numpy(float))
    logger.info("size sweep on %s over %d sizes: slope %.3f", metric, len(df), slope)
    return SizeSweep(frame=df, metric=metric, slope=slope)


__all__ = ["SizeSweep", "run_size_sweep"]
