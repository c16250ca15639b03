import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, in order."""
    lines = []
    for key in ("passed", "failed", "xfailed", "xpassed"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when != "call" and key != "xfailed":
                continue
            n = int(nodeid.split("test_criterion_")[1].split("_")[0])
            lines.append((n, "PASS" if key == "passed" else "FAIL", nodeid.split("::")[1]))
    if lines:
        terminalreporter.section("acceptance")
        for n, verdict, name in sorted(lines):
            terminalreporter.write_line(f"{verdict} criterion {n} ({name})")
