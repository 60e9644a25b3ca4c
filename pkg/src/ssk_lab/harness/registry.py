from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple

import pandas as pd

from utils.runners.batch_config import RunConfig
from utils.runners.seeding import ROLE_SPECTRUM

from ..enums import Experiment
from ..errors import InvalidArgumentError
from .records import TrialRecord

"""Registry mapping experiment tags to their validate / trial / summarize hooks."""

logger = logging.getLogger(__name__)

ValidateFn = Callable[[RunConfig], None]
TrialFn = Callable[[RunConfig, int], Tuple[int, Dict[str, Any]]]
SummaryFn = Callable[[RunConfig, List[TrialRecord], int], Dict[str, Any]]
TableFn = Callable[[RunConfig, List[TrialRecord]], Optional[pd.DataFrame]]


@dataclass(frozen=True)
class ExperimentSpec:
    """Hooks of one experiment.

    ``trial(config, index)`` returns ``(derived_seed, outputs)``;
    ``summarize(config, records, failures)`` sees successful records in
    trial order; ``sweep_metric`` names the summary entry used by size sweeps and
    ``seed_role`` is the stream recorded as ``derived_seed``.
    """

    tag: Experiment
    validate: ValidateFn
    trial: TrialFn
    summarize: SummaryFn
    table: Optional[TableFn] = None
    sweep_metric: Optional[str] = None
    seed_role: int = ROLE_SPECTRUM
    description: str = ""


class ExperimentRegistry:
    """Registry for experiment definitions."""

    def __init__(self, load_builtin: bool = True):
        self._specs: Dict[Experiment, ExperimentSpec] = {}
        if load_builtin:
            self._load_builtin_experiments()

    def _load_builtin_experiments(self) -> None:
        from .experiments import BUILTIN_EXPERIMENTS

        for spec in BUILTIN_EXPERIMENTS:
            self.register(spec)

    def register(self, spec: ExperimentSpec) -> None:
        if not isinstance(spec, ExperimentSpec):
            raise InvalidArgumentError(f"expected an ExperimentSpec, got {type(spec).__name__}")
        self._specs[spec.tag] = spec
        logger.debug("Registered experiment: %s", spec.tag.value)

    def get(self, tag: Experiment | str) -> ExperimentSpec:
        parsed = Experiment.parse(tag)
        try:
            return self._specs[parsed]
        except KeyError as exc:
            raise InvalidArgumentError(f"experiment {parsed.value!r} is not registered") from exc

    def list_experiments(self) -> List[str]:
        return [tag.value for tag in self._specs]

    def info(self, tag: Experiment | str) -> Dict[str, Any]:
        spec = self.get(tag)
        return {
            "tag": spec.tag.value,
            "description": spec.description,
            "sweep_metric": spec.sweep_metric,
            "has_table": spec.table is not None,
        }


@lru_cache(maxsize=1)
def default_registry() -> ExperimentRegistry:
    return ExperimentRegistry()


__all__ = ["ExperimentRegistry", "ExperimentSpec", "default_registry"]
