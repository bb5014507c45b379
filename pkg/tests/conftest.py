import re
import sys
import time
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

SUITE_BUDGET = 60.0
_started = time.perf_counter()
_criteria = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed or report.skipped:
        prev = _criteria.get(key)
        if prev != "FAIL":
            _criteria[key] = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _started
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), status in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {num:2d} {status}  {name.replace('_', ' ')}")
    status = "PASS" if elapsed < SUITE_BUDGET else "FAIL"
    terminalreporter.write_line(f"suite runtime {status}  {elapsed:.1f}s (budget {SUITE_BUDGET:.0f}s)")


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _started >= SUITE_BUDGET and exitstatus == 0:
        session.exitstatus = 1
