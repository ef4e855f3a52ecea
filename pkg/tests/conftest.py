import pytest

_CRITERIA: dict = {}
_TITLES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _TITLES[number] = title
    ok = call.excinfo is None
    _CRITERIA[number] = _CRITERIA.get(number, True) and ok


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status = "PASS" if _CRITERIA[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {_TITLES[number]}")
