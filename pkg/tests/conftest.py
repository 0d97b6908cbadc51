import os
import sys
from collections import defaultdict

sys.path.insert(0, os.path.dirname(__file__))

# outcomes of acceptance tests, grouped by criterion number
_criteria: dict = defaultdict(lambda: {"title": "", "passed": 0, "failed": 0, "xfailed": 0, "xpassed": 0})
_marks: dict = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _marks[item.nodeid] = m.args
            _criteria[m.args[0]]["title"] = m.args[1]


def pytest_runtest_logreport(report):
    args = _marks.get(report.nodeid)
    if args is None:
        return
    row = _criteria[args[0]]
    if report.when == "call":
        if hasattr(report, "wasxfail"):
            row["xpassed" if report.passed else "xfailed"] += 1
        elif report.passed:
            row["passed"] += 1
        elif report.failed:
            row["failed"] += 1
    elif report.failed:
        row["failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        row = _criteria[n]
        if row["failed"] or row["xpassed"]:
            verdict = "FAIL"
        elif row["xfailed"]:
            verdict = "FAIL as stated; corrected form PASS"
        else:
            verdict = "PASS"
        extra = f" ({row['xfailed']} documented strict xfail)" if row["xfailed"] else ""
        tr.write_line(f"criterion {n:>2} {row['title']}: {verdict}{extra}")
