import re
from collections import defaultdict

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

CRITERIA = {
    1: "non-adaptive round trip",
    2: "h optimality by exhaustion",
    3: "h formula vs builder sizes",
    4: "adaptive correctness and budget",
    5: "k=2 solver within 2n",
    6: "partition adversary lower bound",
    7: "counting referees",
    8: "k=2 first-query certificates",
    9: "exact f referee",
    10: "property suite",
}

_outcomes = defaultdict(list)
_name = re.compile(r"test_ac(\d+)_")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    match = _name.search(report.nodeid.split("::")[-1])
    if match and "test_acceptance.py" in report.nodeid:
        _outcomes[int(match.group(1))].append((report.passed, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        results = _outcomes.get(number)
        if not results:
            continue
        ok = all(passed for passed, _ in results)
        seconds = sum(d for _, d in results)
        terminalreporter.write_line(
            f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {title}  ({len(results)} checks, {seconds:.1f}s)"
        )
