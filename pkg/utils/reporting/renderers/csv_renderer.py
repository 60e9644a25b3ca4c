from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

from .base import Renderer

# 17 significant digits round-trip any double
FLOAT_FORMAT = "%.17g"


class CsvTableRenderer(Renderer):
    """Write a DataFrame (or a list of row dicts) to CSV.

    Empty tables are skipped so that no header-only files appear.
    """

    def render(self, payload: pd.DataFrame | List[Dict[str, Any]], out_path: Path) -> None:  # noqa: D401
        df = payload if isinstance(payload, pd.DataFrame) else pd.DataFrame(payload)
        if df.empty:
            return
        out_path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(out_path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


__all__ = ["CsvTableRenderer", "FLOAT_FORMAT"]
