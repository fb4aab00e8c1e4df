import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, seconds): acceptance criterion with a time bound")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title, seconds = marker.args
    _criteria[number] = {
        "title": title,
        "bound": seconds,
        "elapsed": report.duration,
        "passed": report.passed and report.duration < seconds,
    }


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        c = _criteria[number]
        status = "PASS" if c["passed"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d}: {status}  {c['elapsed']:7.2f}s / {c['bound']:g}s  {c['title']}"
        )
