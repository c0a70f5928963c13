"""Collects acceptance results and prints one line per criterion at the end of the run."""

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, budget): an acceptance criterion with its runtime budget in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number, title, budget = marker.args
    _RESULTS[number] = (title, budget, report.duration, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, budget, duration, passed = _RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {title} ({duration:.2f} s, budget {budget:g} s)")
    passed = sum(r[3] for r in _RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(_RESULTS)} criteria met")
