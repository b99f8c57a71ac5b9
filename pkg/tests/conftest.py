"""Prints one pass/fail line per acceptance criterion after the run."""

import re

_CRITERION = re.compile(r"test_acceptance\.py.*test_criterion_(\d+)")

_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _CRITERION.search(report.nodeid)
    if m:
        _results[int(m.group(1))] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_results):
        verdict = "PASS" if _results[num] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {verdict}")
