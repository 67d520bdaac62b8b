"""Shared pytest configuration.

Prints one PASS/FAIL line per numbered acceptance criterion after the
run, so the checklist outcome is visible at a glance.
"""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_([a-z0-9_]+)")

_VERDICTS = {
    "passed": "PASS",
    "failed": "FAIL",
    "error": "ERROR",
    "skipped": "SKIP",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome, verdict in _VERDICTS.items():
        for report in terminalreporter.stats.get(outcome, ()):
            match = _CRITERION.search(getattr(report, "nodeid", ""))
            if not match:
                continue
            key = (match.group(1), match.group(2).replace("_", "-"))
            # any non-pass phase (setup error, call failure) overrides a pass
            if key not in results or verdict != "PASS":
                results[key] = verdict
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, label), verdict in sorted(results.items()):
        terminalreporter.write_line(f"ACCEPTANCE {number} {label}: {verdict}")
