import json
import math

import numpy as np
import pytest

from ssk_lab.harness import SCHEMA_VERSION, TrialRecord, record_inputs


def test_record_line_is_canonical_json():
    record = TrialRecord(
        experiment="sample",
        trial_index=2,
        derived_seed=99,
        inputs={"n": 3},
        outputs={"value": np.float64(0.1), "missing": math.nan, "big": math.inf, "z": 1 + 2j},
        wall_time=5.0,
    )
    line = record.to_json_line()
    data = json.loads(line)
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["outputs"] == {"value": 0.1, "missing": None, "big": "inf", "z": [1.0, 2.0]}
    assert "wall_time" not in data
    assert " " not in line
    assert list(data) == sorted(data)


def test_record_round_trip():
    record = TrialRecord("xi", 0, 7, {"n": 10}, {"xi": -0.25})
    back = TrialRecord.from_json_line(record.to_json_line())
    assert back.to_json_line() == record.to_json_line()
    assert back.ok


def test_unsupported_schema_version():
    data = TrialRecord("xi", 0, 7, {}, {}).to_dict()
    data["schema_version"] = SCHEMA_VERSION + 1
    with pytest.raises(ValueError):
        TrialRecord.from_dict(data)


def test_failure_record_is_not_ok():
    record = TrialRecord("xi", 1, 7, {}, error={"type": "NumericFailureError", "message": "boom"})
    assert not record.ok
    assert json.loads(record.to_json_line())["error"]["type"] == "NumericFailureError"


def test_record_inputs_drop_execution_fields():
    inputs = record_inputs({"n": 5, "workers": 4, "executor": "process", "output_path": "x", "beta": 1.5})
    assert inputs == {"beta": 1.5, "n": 5}
