import pytest

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, desc): acceptance criterion, reported in the summary"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _RESULTS.append((mark.args[0], mark.args[1], rep.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, passed in sorted(_RESULTS):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {num}: {desc}")
