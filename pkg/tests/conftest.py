from __future__ import annotations

import time
from dataclasses import dataclass

import pytest

_RESULTS = pytest.StashKey[list]()


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    elapsed: float
    budget: float
    note: str = ""


class CriterionRecorder:
    """Times one acceptance criterion and records its outcome for the summary."""

    def __init__(self, sink: list):
        self._sink = sink

    def run(self, number: int, title: str, budget: float, body) -> None:
        start = time.perf_counter()
        note = ""
        try:
            note = body() or ""
        except AssertionError as exc:
            elapsed = time.perf_counter() - start
            self._sink.append(CriterionResult(number, title, False, elapsed, budget, str(exc).splitlines()[0]))
            raise
        elapsed = time.perf_counter() - start
        within = elapsed < budget
        self._sink.append(
            CriterionResult(number, title, within, elapsed, budget, note if within else f"over budget; {note}")
        )
        assert within, f"criterion {number} took {elapsed:.2f} s, budget {budget:.0f} s"


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def criterion(request) -> CriterionRecorder:
    return CriterionRecorder(request.config.stash[_RESULTS])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = sorted(config.stash.get(_RESULTS, []), key=lambda r: r.number)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for r in results:
        verdict = "PASS" if r.passed else "FAIL"
        line = f"[{verdict}] criterion {r.number}: {r.title} ({r.elapsed:.2f} s of {r.budget:.0f} s)"
        if r.note:
            line += f" - {r.note}"
        terminalreporter.write_line(line)
