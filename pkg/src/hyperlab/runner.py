# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from enum import Enum, auto
from functools import partial
from queue import Queue
from threading import Thread
from typing import Any, Callable, Iterable, Sequence, TypedDict, Union

from structlog import getLogger

from hyperlab.config import ContractionConfig
from hyperlab.contraction import (
    ContractionCase,
    ConvergenceReport,
    Status,
    negative_report,
    run_contraction,
)
from hyperlab.errors import HyperlabError, NoContractionError


class RunnerSignal(Enum):
    """
    Signals to send to the worker threads.
    """

    STOP = auto()


class WorkItem(TypedDict):
    # results are merged by this id
    id: str
    task: Callable[[], Any]


WorkQueue = Queue[Union[WorkItem, RunnerSignal]]
ResultQueue = Queue[tuple[str, Any]]
ErrorHandler = Callable[[str, Exception], Any]


def worker(
    name: str, queue: WorkQueue, results: ResultQueue, on_error: ErrorHandler
) -> None:
    """
    Intended to be used as thread target. Runs the tasks received via the
    passed queue and puts `(id, result)` pairs into `results`. A raising task
    yields `on_error(id, exc)` instead.

    Communication such as the message to finish up is also done via the same
    queue.
    """
    logger = getLogger(thread=name)
    logger.debug("Worker started")
    while True:
        item = queue.get()
        if isinstance(item, RunnerSignal):
            if item == RunnerSignal.STOP:
                logger.debug("STOP signal received, stopping thread now.")
                queue.task_done()
                break
        else:
            try:
                results.put((item["id"], item["task"]()))
            except Exception as exc:
                logger.exception("unknown_exception", id=item["id"])
                results.put((item["id"], on_error(item["id"], exc)))
        queue.task_done()


def run_parallel(
    items: Sequence[WorkItem], workers: int, on_error: ErrorHandler
) -> list[tuple[str, Any]]:
    "Runs `items` on up to `workers` threads, results are sorted by id"
    queue: WorkQueue = Queue()
    results: ResultQueue = Queue()
    threads = [
        Thread(
            target=worker,
            name=f"worker-{index}",
            args=(f"worker-{index}", queue, results, on_error),
        )
        for index in range(max(1, min(workers, len(items))))
    ]
    for thread in threads:
        thread.start()
    for item in items:
        queue.put(item)
    # finish all current entries inside the queue
    queue.join()
    for _ in threads:
        queue.put(RunnerSignal.STOP)
    for thread in threads:
        thread.join()
    merged = []
    while not results.empty():
        merged.append(results.get())
    return sorted(merged, key=lambda pair: pair[0])


# contraction runs


def error_report(case: ContractionCase, reason: str) -> ConvergenceReport:
    return ConvergenceReport(
        case.case_id,
        case.source_id,
        case.target_id,
        Status.ERROR,
        [],
        [],
        None,
        case.expected_order,
        None,
        False,
        reason,
    )


def run_case(
    case: ContractionCase, config: ContractionConfig, *, seed: int = 0
) -> ConvergenceReport:
    "Runs a single case, negative cases and failures become reports"
    logger = getLogger(case=case.case_id)
    try:
        return run_contraction(case, config, seed=seed)
    except NoContractionError as exc:
        logger.debug("no_contraction", reason=exc.reason)
        return negative_report(case, exc.reason)
    except HyperlabError as exc:
        logger.warning("case_error", error=str(exc))
        return error_report(case, f"{type(exc).__name__}: {exc}")


def run_cases(
    cases: Iterable[ContractionCase],
    config: ContractionConfig = ContractionConfig(),
    *,
    seed: int = 0,
) -> list[ConvergenceReport]:
    "Runs `cases` on `config.workers` threads, reports are sorted by case id"
    by_id = {case.case_id: case for case in cases}
    items = [
        WorkItem(id=case_id, task=partial(run_case, case, config, seed=seed))
        for case_id, case in by_id.items()
    ]
    results = run_parallel(
        items,
        config.workers,
        lambda case_id, exc: error_report(by_id[case_id], f"{type(exc).__name__}: {exc}"),
    )
    reports = [report for _, report in results]
    getLogger(thread="main").info(
        "Finished contraction run",
        cases=len(reports),
        passed=sum(report.passed for report in reports),
    )
    return reports
