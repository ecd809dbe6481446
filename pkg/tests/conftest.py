import pytest

from eqtrans import RelationGraph

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        if report.skipped:
            reason = report.longrepr[2] if isinstance(report.longrepr, tuple) else ""
            _ACCEPTANCE[name] = f"SKIP  {reason.removeprefix('Skipped: ')}"
        else:
            _ACCEPTANCE[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{name:<48} {_ACCEPTANCE[name]}")


@pytest.fixture
def k3():
    return RelationGraph(3, [(1, 2, 1), (2, 3, 2), (1, 3, 3)])


@pytest.fixture
def c4():
    return RelationGraph(4, [(1, 2, 1), (2, 3, 2), (3, 4, 3), (1, 4, 4)])
