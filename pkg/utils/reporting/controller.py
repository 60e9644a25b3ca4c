from __future__ import annotations

import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import pandas as pd

from .renderers.csv_renderer import CsvTableRenderer
from .renderers.json_renderer import JsonLinesRenderer, JsonSummaryRenderer

logger = logging.getLogger(__name__)

RECORDS_FILE = "records.jsonl"
SUMMARY_FILE = "summary.json"
TIMINGS_FILE = "timings.csv"
TABLE_FILE = "table.csv"


class ReportController:  # pylint: disable=too-few-public-methods
    """Write the run directory: JSON-lines records, JSON summary, CSV tables."""

    def __init__(self, root: Path | str = "runlogs"):
        self.root = Path(root)
        self.records_renderer = JsonLinesRenderer()
        self.summary_renderer = JsonSummaryRenderer()
        self.csv_renderer = CsvTableRenderer()

    # ------------------------------------------------------------------
    def run_dir(self, experiment: str, *, label: Optional[str] = None, now: Optional[datetime] = None) -> Path:
        """``root/<experiment>/<YYYY-MM-DD>/<HH-MM-SS>[_<label>]/``."""
        now = now or datetime.now()
        time_part = now.strftime("%H-%M-%S")
        name = f"{time_part}_{label}" if label else time_part
        return self.root / experiment / now.strftime("%Y-%m-%d") / name

    # ------------------------------------------------------------------
    def generate(
        self,
        records: Iterable[Any],
        summary: Dict[str, Any],
        *,
        out_dir: Path | str,
        timings: Optional[pd.DataFrame] = None,
        table: Optional[pd.DataFrame] = None,
    ) -> Path:  # noqa: D401
        """Write every artefact of one run into *out_dir* and return it.

        ``records.jsonl`` and ``summary.json`` depend only on the run
        configuration; wall-clock timings go to ``timings.csv``.
        """
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        self.records_renderer.render(records, out_dir / RECORDS_FILE)
        self.summary_renderer.render(summary, out_dir / SUMMARY_FILE)
        if timings is not None:
            self.csv_renderer.render(timings, out_dir / TIMINGS_FILE)
        if table is not None:
            self.csv_renderer.render(table, out_dir / TABLE_FILE)
        logger.info("Wrote run artefacts to %s", out_dir)
        return out_dir

    # ------------------------------------------------------------------
    @classmethod
    def latest_report_dir(cls, root: Path | str, experiment: str) -> Path | None:  # noqa: D401
        """Return the most recent run directory of *experiment*, or None."""
        root_path = Path(root) / experiment
        if not root_path.exists():
            return None

        latest_dt = datetime.min
        latest_path: Path | None = None
        for date_dir in root_path.iterdir():
            if not date_dir.is_dir():
                continue
            for time_dir in date_dir.iterdir():
                if not time_dir.is_dir():
                    continue
                time_prefix = time_dir.name.split("_", 1)[0]  # drop optional label
                try:
                    ts = datetime.strptime(f"{date_dir.name}_{time_prefix}", "%Y-%m-%d_%H-%M-%S")
                except ValueError:
                    continue
                if ts > latest_dt:
                    latest_dt = ts
                    latest_path = time_dir
        return latest_path


__all__ = ["ReportController", "RECORDS_FILE", "SUMMARY_FILE", "TIMINGS_FILE", "TABLE_FILE"]
