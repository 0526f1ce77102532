import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    failed = report.failed
    if report.when == "call" or failed:
        if failed or key not in _outcomes:
            _outcomes[key] = "FAIL" if failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), status in sorted(_outcomes.items()):
        terminalreporter.write_line(f"criterion {num:2d} {name.replace('_', ' ')}: {status}")
