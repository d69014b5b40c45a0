import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _acceptance_log import RESULTS  # noqa: E402

SUITE_BUDGET_S = 120.0
_start = {}


def pytest_sessionstart(session):
    _start["t"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    elapsed = time.perf_counter() - _start.get("t", time.perf_counter())
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        passed, title, detail = RESULTS[num]
        if num == 12:
            passed = passed and elapsed < SUITE_BUDGET_S
            detail = f"{detail}; suite runtime {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {num:2d} {title}: {detail}")
