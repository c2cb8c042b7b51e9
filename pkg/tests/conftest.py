import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    from polyplan import kernels

    kernels.warmup()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("test_criterion_")[-1]
                lines.append((name, outcome == "passed"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, ok in sorted(lines):
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}")
