"""Acceptance gate: one test per criterion, each printing its pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines, or `wedgeprobe verify` for the same checks outside pytest.
"""

from wedgeprobe import acceptance


def _run(fn):
    res = fn()
    print(res.line())
    assert res.ok, res.detail
    return res


def test_criterion_1_oracle_equivalence():
    _run(acceptance.criterion_1_oracle_equivalence)


def test_criterion_2_basic_budget():
    _run(acceptance.criterion_2_basic_budget)


def test_criterion_3_right_angle_budget():
    _run(acceptance.criterion_3_right_angle_budget)


def test_criterion_4_narrow_budgets():
    _run(acceptance.criterion_4_narrow_budgets)


def test_criterion_5_lower_bound_game():
    _run(acceptance.criterion_5_lower_bound_game)


def test_criterion_6_cloud_invariants():
    _run(acceptance.criterion_6_cloud_invariants)


def test_criterion_7_uniqueness():
    _run(acceptance.criterion_7_uniqueness)


def test_criterion_8_epsilon_impossibility():
    _run(acceptance.criterion_8_epsilon_impossibility)
