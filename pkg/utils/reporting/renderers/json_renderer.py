from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Protocol

import numpy as np

from .base import Renderer


def to_builtin(value: Any) -> Any:
    """Recursively convert numpy / complex / non-finite values to JSON types.

    NaN becomes ``null``; infinities become the strings ``"inf"`` / ``"-inf"``;
    complex numbers become ``[re, im]``; enums become their value.
    """
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_builtin(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [to_builtin(float(value.real)), to_builtin(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if math.isnan(number):
            return None
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return number
    if hasattr(value, "value") and hasattr(value, "name"):  # enums
        return value.value
    return value


class _JsonLine(Protocol):
    def to_json_line(self) -> str: ...


class JsonLinesRenderer(Renderer):
    """One JSON document per line; items serialize themselves."""

    def render(self, payload: Iterable[_JsonLine], out_path: Path) -> None:  # noqa: D401
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with out_path.open("w", encoding="utf-8", newline="\n") as fh:
            for item in payload:
                fh.write(item.to_json_line())
                fh.write("\n")


class JsonSummaryRenderer(Renderer):
    def render(self, payload: Dict[str, Any], out_path: Path) -> None:  # noqa: D401
        out_path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(to_builtin(payload), indent=2, sort_keys=True, allow_nan=False)
        out_path.write_text(text + "\n", encoding="utf-8")


__all__ = ["JsonLinesRenderer", "JsonSummaryRenderer", "to_builtin"]
