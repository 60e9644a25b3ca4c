import time

import pytest

from utils.runners.base_batch_runner import BatchRunner


def _square(x: int) -> int:
    # later tasks finish first under a pool
    time.sleep(0.01 * (5 - x))
    return x * x


def _fail_on_two(x: int) -> int:
    if x == 2:
        raise ArithmeticError("bad task")
    return x


def test_outcomes_follow_task_order():
    runner = BatchRunner(_square, max_workers=4)
    outcomes = runner.run(range(5))
    assert [o.index for o in outcomes] == [0, 1, 2, 3, 4]
    assert [o.result for o in outcomes] == [0, 1, 4, 9, 16]
    assert all(o.ok for o in outcomes)


def test_inline_and_pool_agree():
    inline = BatchRunner(_square, max_workers=1).run(range(5))
    pooled = BatchRunner(_square, max_workers=3).run(range(5))
    assert [o.result for o in inline] == [o.result for o in pooled]


def test_errors_are_captured_per_task():
    for workers in (1, 3):
        outcomes = BatchRunner(_fail_on_two, max_workers=workers).run([0, 1, 2, 3])
        assert [o.ok for o in outcomes] == [True, True, False, True]
        assert outcomes[2].error == "bad task"
        assert outcomes[2].error_type == "ArithmeticError"

        agg = BatchRunner.aggregate(outcomes)
        assert agg == {"tasks": 4, "succeeded": 3, "failed": 1, "error_types": ["ArithmeticError"]}


def test_bad_arguments():
    with pytest.raises(ValueError):
        BatchRunner(_square, max_workers=0)
    with pytest.raises(ValueError):
        BatchRunner(_square, executor="cluster")


def test_empty_batch():
    assert BatchRunner(_square, max_workers=2).run([]) == []
