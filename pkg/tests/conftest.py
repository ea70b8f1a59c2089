import pytest

_RESULTS: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion and return the verdict."""
    def _report(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}"
        if detail:
            line += f"  [{detail}]"
        _RESULTS.append(line)
        print(line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in _RESULTS:
            terminalreporter.write_line(line)
