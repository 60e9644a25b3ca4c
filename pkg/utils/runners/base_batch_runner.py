from __future__ import annotations

import concurrent.futures as _fut
import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

"""Generic batch runner infrastructure.

:class:`BatchRunner` maps a worker function over a sequence of tasks on a
thread or process pool.  Outcomes come back in task order whatever the
completion order, and an exception in one task is captured in its outcome
instead of aborting the batch.
"""

logger = logging.getLogger(__name__)

EXECUTORS = ("thread", "process")


@dataclass(frozen=True)
class TaskOutcome:
    """Result or error of one task, with its position in the input."""

    index: int
    result: Any = None
    error: Optional[str] = None
    error_type: Optional[str] = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None


def _timed(worker: Callable[[Any], Any], task: Any) -> tuple[Any, float]:
    start = time.perf_counter()
    result = worker(task)
    return result, time.perf_counter() - start


class BatchRunner:  # pylint: disable=too-few-public-methods
    """Run tasks in parallel and collate ordered outcomes."""

    def __init__(
        self,
        worker_fn: Callable[[Any], Any],
        max_workers: int | None = None,
        *,
        executor: str = "thread",
    ):
        """Args
        -----
        worker_fn: Callable that processes a single task.  With the process
            executor it must be picklable (a module-level function or a
            ``functools.partial`` of one).
        max_workers: Concurrency level; ``1`` runs inline without a pool.
        executor: ``"thread"`` or ``"process"``.
        """
        if executor not in EXECUTORS:
            raise ValueError(f"executor must be one of {EXECUTORS}, got {executor!r}")
        if max_workers is not None and max_workers < 1:
            raise ValueError(f"max_workers must be positive, got {max_workers}")
        self._worker = worker_fn
        self._max_workers = max_workers
        self._executor = executor
        self.log = logging.getLogger(self.__class__.__name__)

    # ------------------------------------------------------------------
    def _run_inline(self, tasks: Sequence[Any]) -> List[TaskOutcome]:
        outcomes = []
        for index, task in enumerate(tasks):
            start = time.perf_counter()
            try:
                result = self._worker(task)
            except Exception as exc:  # pylint: disable=broad-except
                self.log.exception("Task %s raised exception: %s", index, exc)
                outcomes.append(
                    TaskOutcome(
                        index,
                        error=str(exc),
                        error_type=type(exc).__name__,
                        wall_time=time.perf_counter() - start,
                    )
                )
                continue
            outcomes.append(TaskOutcome(index, result=result, wall_time=time.perf_counter() - start))
        return outcomes

    # ------------------------------------------------------------------
    def run(self, tasks: Sequence[Any]) -> List[TaskOutcome]:  # noqa: D401
        """Execute *tasks* and return their outcomes ordered by task index."""
        tasks = list(tasks)
        if self._max_workers == 1 or len(tasks) <= 1:
            return self._run_inline(tasks)
        pool_cls = _fut.ThreadPoolExecutor if self._executor == "thread" else _fut.ProcessPoolExecutor
        outcomes: list[TaskOutcome] = []
        with pool_cls(max_workers=self._max_workers) as pool:
            fut_to_index = {pool.submit(_timed, self._worker, t): i for i, t in enumerate(tasks)}
            for fut in _fut.as_completed(fut_to_index):
                index = fut_to_index[fut]
                try:
                    res, elapsed = fut.result()
                    outcomes.append(TaskOutcome(index, result=res, wall_time=elapsed))
                except Exception as exc:  # pylint: disable=broad-except
                    self.log.exception("Task %s raised exception: %s", index, exc)
                    outcomes.append(TaskOutcome(index, error=str(exc), error_type=type(exc).__name__))
        outcomes.sort(key=lambda o: o.index)
        return outcomes

    # ------------------------------------------------------------------
    @staticmethod
    def aggregate(outcomes: List[TaskOutcome]) -> Dict[str, Any]:  # noqa: D401
        """Success / failure counts and the error types seen."""
        failures = [o for o in outcomes if not o.ok]
        return {
            "tasks": len(outcomes),
            "succeeded": len(outcomes) - len(failures),
            "failed": len(failures),
            "error_types": sorted({o.error_type for o in failures if o.error_type}),
        }


__all__ = ["BatchRunner", "TaskOutcome", "EXECUTORS"]
