"""Shared fixtures and the acceptance summary printed after the run."""

import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """record(k, passed, detail): one summary line per acceptance criterion."""
    def _record(k: int, passed: bool, detail: str) -> bool:
        ACCEPTANCE[k] = (bool(passed), detail)
        return bool(passed)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        tr.write_line(f"ACCEPTANCE {k:2d} {'PASS' if ok else 'FAIL'}: {detail}")
