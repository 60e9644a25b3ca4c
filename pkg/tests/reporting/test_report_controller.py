import json
from datetime import datetime

import pandas as pd

from ssk_lab.harness import TrialRecord
from utils.reporting.controller import (
    RECORDS_FILE,
    SUMMARY_FILE,
    TABLE_FILE,
    TIMINGS_FILE,
    ReportController,
)


def _records():
    return [
        TrialRecord("xi", 0, 11, {"n": 10}, {"xi": -0.5}),
        TrialRecord("xi", 1, 12, {"n": 10}, {"xi": float("nan")}),
    ]


def test_report_controller_creates_files(tmp_path):
    ctrl = ReportController(root=tmp_path)
    out_dir = ctrl.generate(
        _records(),
        {"experiment": "xi", "xi": {"mean": float("inf")}},
        out_dir=tmp_path / "run",
        timings=pd.DataFrame({"trial_index": [0, 1], "wall_time": [0.1, 0.2]}),
        table=pd.DataFrame({"t": [1.0, 2.0], "mean": [0.5, 1.5]}),
    )

    lines = (out_dir / RECORDS_FILE).read_text(encoding="utf-8").splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["outputs"]["xi"] is None
    summary = json.loads((out_dir / SUMMARY_FILE).read_text(encoding="utf-8"))
    assert summary["xi"]["mean"] == "inf"
    assert (out_dir / TIMINGS_FILE).exists()
    table = pd.read_csv(out_dir / TABLE_FILE)
    assert list(table.columns) == ["t", "mean"]


def test_empty_table_is_skipped(tmp_path):
    ctrl = ReportController(root=tmp_path)
    out_dir = ctrl.generate([], {}, out_dir=tmp_path / "run", table=pd.DataFrame())
    assert (out_dir / RECORDS_FILE).read_text(encoding="utf-8") == ""
    assert not (out_dir / TABLE_FILE).exists()


def test_run_dir_layout(tmp_path):
    ctrl = ReportController(root=tmp_path)
    now = datetime(2024, 5, 17, 9, 30, 5)
    assert ctrl.run_dir("zerodiag", now=now) == tmp_path / "zerodiag" / "2024-05-17" / "09-30-05"
    assert ctrl.run_dir("zerodiag", label="n1000", now=now).name == "09-30-05_n1000"


def test_latest_report_dir(tmp_path):
    ctrl = ReportController(root=tmp_path)
    older = ctrl.run_dir("xi", label="n100", now=datetime(2024, 5, 17, 9, 30, 5))
    newer = ctrl.run_dir("xi", now=datetime(2024, 5, 18, 8, 0, 0))
    for path in (older, newer):
        path.mkdir(parents=True)
    (tmp_path / "xi" / "notes").mkdir()

    assert ReportController.latest_report_dir(tmp_path, "xi") == newer
    assert ReportController.latest_report_dir(tmp_path, "counting") is None
