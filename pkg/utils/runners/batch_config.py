from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ssk_lab.enums import EnsembleKind, Experiment
from ssk_lab.errors import ConfigError, InvalidArgumentError

"""Run configuration shared by the CLI and the harness.

YAML files mirror the dataclass fields one to one; unknown keys are
rejected.  Precedence: keyword overrides > YAML > dataclass defaults.
"""

# counting-experiment alias resolved by the edge-limit module
AIRY1_PROXY = "AIRY1"
METHODS = ("contour", "expansion", "mc", "bldw", "keyhole")
EXECUTORS = ("thread", "process")


@dataclass
class RunConfig:  # pylint: disable=too-many-instance-attributes
    """All knobs of one experiment run with safe defaults."""

    experiment: str = "sample"
    n: int = 100
    beta: float = 1.5
    trials: int = 10
    master_seed: int = 0
    output_path: Optional[str] = None

    # execution --------------------------------------------------------
    workers: int = 1
    executor: str = "thread"

    # ensembles --------------------------------------------------------
    kind: Optional[str] = None  # experiment default when absent

    # overlap ----------------------------------------------------------
    method: str = "contour"
    n_samples: int = 10_000
    force: bool = False
    fourth_moment_form: str = "stated"
    contour: Dict[str, Any] = field(default_factory=dict)

    # event F ----------------------------------------------------------
    delta: float = 0.1
    eps1: float = 0.02
    rigidity_constant: float = 1.0

    # edge limit -------------------------------------------------------
    estimator: str = "FULL_SPECTRUM"
    cutoff: Optional[int] = None
    compare_cutoff: Optional[int] = None
    t_grid: List[float] = field(default_factory=lambda: [1.0, 2.0, 4.0])
    k_max: Optional[int] = None
    match_variance: bool = True
    n_airy: Optional[int] = None
    observable: str = "m2"
    enforce_regime: bool = True

    # zero diagonal ----------------------------------------------------
    z_grid: List[List[float]] = field(default_factory=list)  # [re, im] pairs

    # gap tail ---------------------------------------------------------
    s_grid: List[float] = field(default_factory=lambda: [0.1, 0.2, 0.3, 0.5])

    # ------------------------------------------------------------------
    @classmethod
    def from_yaml(cls, path: str | Path, **overrides: Any) -> "RunConfig":  # noqa: D401
        """Build a config from a YAML file.

        Keys missing in the YAML keep their defaults; ``None`` overrides are
        ignored so unset CLI flags do not clobber file values.
        """
        path = Path(path).expanduser()
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path} must contain a mapping")
        return cls.from_dict(data, **overrides)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], **overrides: Any) -> "RunConfig":
        values = dict(data)
        values.update({k: v for k, v in overrides.items() if v is not None})
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {unknown}")
        return cls(**values)

    # ------------------------------------------------------------------
    def to_dict(self) -> Dict[str, Any]:  # noqa: D401
        """Return dict representation (echoed into every record)."""
        return asdict(self)

    @property
    def experiment_tag(self) -> Experiment:
        return Experiment.parse(self.experiment)

    # ------------------------------------------------------------------
    def validate(self) -> "RunConfig":
        """Checks that do not depend on the experiment; raises ConfigError."""
        try:
            Experiment.parse(self.experiment)
            if self.kind is not None and str(self.kind).upper() != AIRY1_PROXY:
                EnsembleKind.parse(self.kind)
        except InvalidArgumentError as exc:
            raise ConfigError(str(exc)) from exc
        _require(isinstance(self.n, int) and self.n >= 1, f"n must be a positive integer, got {self.n!r}")
        _require(
            isinstance(self.trials, int) and self.trials >= 0,
            f"trials must be a non-negative integer, got {self.trials!r}",
        )
        _require(
            isinstance(self.master_seed, int) and self.master_seed >= 0,
            f"master_seed must be a non-negative integer, got {self.master_seed!r}",
        )
        _require(
            isinstance(self.workers, int) and self.workers >= 1,
            f"workers must be a positive integer, got {self.workers!r}",
        )
        _require(self.executor in EXECUTORS, f"executor must be one of {EXECUTORS}, got {self.executor!r}")
        _require(self.method in METHODS, f"method must be one of {METHODS}, got {self.method!r}")
        _require(self.beta > 0, f"beta must be positive, got {self.beta}")
        _require(0 < self.delta < 1 / 3, f"delta must lie in (0, 1/3), got {self.delta}")
        _require(0 < self.eps1 < 1, f"eps1 must lie in (0, 1), got {self.eps1}")
        _require(self.rigidity_constant > 0, f"rigidity_constant must be positive, got {self.rigidity_constant}")
        _require(self.n_samples >= 1, f"n_samples must be positive, got {self.n_samples}")
        for pair in self.z_grid:
            _require(
                isinstance(pair, (list, tuple)) and len(pair) == 2,
                f"z_grid entries must be [re, im] pairs, got {pair!r}",
            )
        return self


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


__all__ = ["RunConfig", "METHODS", "EXECUTORS"]
