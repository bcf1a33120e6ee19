from __future__ import annotations

import pytest

VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    def record(title: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        VERDICTS.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
