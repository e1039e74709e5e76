import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria: dict[str, list[str]] = {}


def _criterion(nodeid):
    if "test_acceptance.py::test_criterion_" not in nodeid:
        return None
    name = nodeid.split("::test_criterion_", 1)[1].split("[", 1)[0]
    num, _, label = name.partition("_")
    return f"criterion {num} ({label.replace('_', ' ')})"


def pytest_runtest_logreport(report):
    key = _criterion(report.nodeid)
    if key is None:
        return
    if report.when == "call" or report.outcome != "passed":
        outcome = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
        _criteria.setdefault(key, []).append(outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key, outcomes in _criteria.items():
        if "FAIL" in outcomes:
            verdict = "FAIL"
        elif "PASS" in outcomes:
            verdict = "PASS"
        else:
            verdict = "SKIP"
        terminalreporter.write_line(f"{verdict}  {key}")
