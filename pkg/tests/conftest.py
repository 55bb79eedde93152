import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed:
        _criteria[name] = "PASS" if report.passed and _criteria.get(name) != "FAIL" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        label = name.split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"criterion {int(name.split('_')[2]):>2} {_criteria[name]}: {label}")
