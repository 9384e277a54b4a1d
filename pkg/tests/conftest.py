import pytest

# filled by tests/test_acceptance.py, repeated once at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance_record():
    def record(result):
        ACCEPTANCE_LINES[result.number] = result.line()
        print(result.line())

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
    passed = sum(line.startswith("[PASS]") for line in ACCEPTANCE_LINES.values())
    terminalreporter.write_line(f"{passed}/{len(ACCEPTANCE_LINES)} criteria passed")
