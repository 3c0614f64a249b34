import pytest

_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion; the last call per id wins."""

    def record(number: int, passed: bool, detail: str):
        passed = bool(passed)
        _RESULTS[number] = (passed, detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        passed, detail = _RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {detail}")
