from __future__ import annotations

import pytest

# (number, title, passed, detail) recorded by tests/test_acceptance.py
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line and fail the test if ``passed`` is false."""

    def record(number: int, title: str, passed: bool, detail: str) -> None:
        ACCEPTANCE.append((number, title, passed, detail))
        print(f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} -- {detail}")
        assert passed, f"criterion {number} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} -- {detail}")
