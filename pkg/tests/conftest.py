from __future__ import annotations

import pytest

from eisres.cli.config import load_field


@pytest.fixture(scope="session")
def Q():
    return load_field("Q")


@pytest.fixture(scope="session")
def Q2():
    return load_field("Q(sqrt2)")


@pytest.fixture(scope="session")
def Q5():
    return load_field("Q(sqrt5)")


ACCEPTANCE: list[tuple[int, str, bool, str]] = []


def record_acceptance(number: int, title: str, passed: bool, detail: str) -> None:
    """Log one acceptance criterion; the lines are printed in the terminal summary."""
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  ({detail})"
    print(line)
    ACCEPTANCE.append((number, title, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  ({detail})")
