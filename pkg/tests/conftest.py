import pytest

_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion test."""

    def record(label):
        _ACCEPTANCE[request.node.nodeid] = [label, None]

    yield record
    entry = _ACCEPTANCE.get(request.node.nodeid)
    if entry is not None and entry[1] is None:
        entry[1] = "PASS"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    entry = _ACCEPTANCE.get(item.nodeid)
    if entry is not None and rep.when == "call" and rep.failed:
        entry[1] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in sorted(_ACCEPTANCE.values()):
        terminalreporter.write_line(f"{status or 'FAIL'}  {label}")
