"""Shared fixtures; collects acceptance verdicts for the terminal summary."""

import pytest

acceptance_lines = []


@pytest.fixture(scope="session")
def record_criterion():
    """Append one pass/fail line per acceptance criterion to the summary."""

    def record(number: int, label: str, passed: bool, detail: str = ""):
        verdict = "PASS" if passed else "FAIL"
        line = f"criterion {number} {verdict} - {label}"
        if detail:
            line += f" ({detail})"
        acceptance_lines.append(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_lines:
        return
    terminalreporter.section("acceptance summary")
    for line in sorted(acceptance_lines):
        terminalreporter.write_line(line)
