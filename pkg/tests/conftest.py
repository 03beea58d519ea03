import pytest

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        notes = "; ".join(f"{k}={v}" for k, v in report.user_properties)
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome, notes))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, notes in _ACCEPTANCE:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}" + (f"  ({notes})" if notes else ""))


@pytest.fixture
def tmp_config(tmp_path):
    def write(text):
        path = tmp_path / "sweep.cfg"
        path.write_text(text, encoding="utf-8")
        return path
    return write
