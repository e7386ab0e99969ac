import pytest

_ACCEPTANCE = []


@pytest.fixture
def record():
    """Record one acceptance line: record(number, passed, detail)."""

    def _record(number, passed, detail=""):
        _ACCEPTANCE.append((number, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        )
