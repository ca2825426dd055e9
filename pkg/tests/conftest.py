import pytest

from corpus import corpus_flows, corpus_posets


@pytest.fixture
def posets():
    return corpus_posets()


@pytest.fixture
def flows():
    return corpus_flows()


# one summary line per acceptance criterion
_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
