from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from utils.reporting.renderers.json_renderer import to_builtin

"""JSON-lines trial records.

Every record carries ``schema_version``.  Floats are written with Python's
shortest round-trip repr (17 significant digits at most), keys are sorted
and wall-clock time is kept out of the record so that reruns are
byte-identical; timings go to a separate CSV.
"""

SCHEMA_VERSION = 1

# config fields that only steer execution and never reach a record
EXECUTION_FIELDS = ("output_path", "workers", "executor")


@dataclass
class TrialRecord:
    experiment: str
    trial_index: int
    derived_seed: int
    inputs: Dict[str, Any]
    outputs: Dict[str, Any] = field(default_factory=dict)
    error: Optional[Dict[str, str]] = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": self.experiment,
            "trial_index": self.trial_index,
            "derived_seed": self.derived_seed,
            "inputs": to_builtin(self.inputs),
            "outputs": to_builtin(self.outputs),
            "error": self.error,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), allow_nan=False)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TrialRecord":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {version!r}")
        return cls(
            experiment=data["experiment"],
            trial_index=int(data["trial_index"]),
            derived_seed=int(data["derived_seed"]),
            inputs=dict(data.get("inputs") or {}),
            outputs=dict(data.get("outputs") or {}),
            error=data.get("error"),
        )

    @classmethod
    def from_json_line(cls, line: str) -> "TrialRecord":
        return cls.from_dict(json.loads(line))


def record_inputs(config_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Config echo without execution-only fields."""
    return {k: v for k, v in sorted(config_dict.items()) if k not in EXECUTION_FIELDS}


__all__ = ["SCHEMA_VERSION", "TrialRecord", "record_inputs", "to_builtin"]
