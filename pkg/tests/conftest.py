from ortholab.acceptance import CriterionResult

# filled by test_acceptance.py, echoed after the run so the lines survive output capture
ACCEPTANCE_LINES: dict[int, str] = {}


def record(result: CriterionResult) -> None:
    line = result.line()
    ACCEPTANCE_LINES[result.number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
