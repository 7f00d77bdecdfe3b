import pytest

from hyperlab.contraction import ContractionCase, Status, get_case
from hyperlab.runner import WorkItem, run_case, run_cases, run_parallel


def failing_task():
    raise RuntimeError("boom")


@pytest.mark.parametrize("workers", [1, 3, 8])
def test_results_are_sorted_by_id(workers):
    items = [WorkItem(id=f"task-{i}", task=lambda i=i: i * i) for i in (3, 1, 4, 0, 2)]
    results = run_parallel(items, workers, lambda name, exc: None)
    assert results == [(f"task-{i}", i * i) for i in range(5)]


def test_raising_task_yields_error_result():
    items = [
        WorkItem(id="a", task=lambda: 1),
        WorkItem(id="b", task=failing_task),
    ]
    results = run_parallel(items, 2, lambda name, exc: f"{name}: {exc}")
    assert results == [("a", 1), ("b", "b: boom")]


def test_empty_run():
    assert run_parallel([], 4, lambda name, exc: None) == []


def test_negative_case_is_a_passing_report(config):
    report = run_case(get_case("H~2/EQ-IIa"), config.contraction)
    assert report.status is Status.NO_CONTRACTION
    assert report.passed
    assert report.reason


def test_broken_case_is_an_error_report(config):
    report = run_case(ContractionCase("broken", "H2/SPH", "E2/nowhere"), config.contraction)
    assert report.status is Status.ERROR
    assert not report.passed


def test_run_cases(config):
    cases = [get_case("H~2/EQ-IIa"), get_case("H2/SPH->E2/polar")]
    reports = run_cases(cases, config.contraction)
    assert [report.case_id for report in reports] == sorted(case.case_id for case in cases)
    assert all(report.passed for report in reports)
