from __future__ import annotations

from support import CRITERIA


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(CRITERIA):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title} ({detail})")

from hypothesis import settings

# the first call pays for the lazy sympy import
settings.register_profile("default", deadline=None)
settings.load_profile("default")
