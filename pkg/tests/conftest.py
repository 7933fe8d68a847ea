from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_criteria: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    prev = _criteria.get(num)
    failed = rep.failed or (prev is not None and prev[1] == "FAIL")
    if rep.when == "call" or rep.failed:
        took = (prev[2] if prev else 0.0) + (rep.duration if rep.when == "call" else 0.0)
        _criteria[num] = (text, "FAIL" if failed else "PASS", took)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        text, status, took = _criteria[num]
        tr.write_line(f"criterion {num:2d}: {status}  {text}  ({took:.2f} s)")
