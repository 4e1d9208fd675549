"""Shared test configuration.

After a run that touched the acceptance tests, print one PASS/FAIL line
per acceptance criterion so the gate can be read off the terminal.
"""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _CRITERION.search(getattr(report, "nodeid", ""))
            if match and getattr(report, "when", "call") == "call":
                number = int(match.group(1))
                ok = outcome == "passed"
                verdicts[number] = verdicts.get(number, True) and ok
    if not verdicts:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for number in sorted(verdicts):
        word = "PASS" if verdicts[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {word}")
