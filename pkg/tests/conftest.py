"""Shared pytest configuration.

Tests marked ``criterion(k)`` belong to acceptance criterion ``k``.  After the
run one ``criterion k: PASS`` or ``criterion k: FAIL`` line is printed per
criterion; a criterion passes when all of its tests pass (an expected failure
counts as a failure of the criterion).
"""
from collections import defaultdict

import pytest

_OUTCOMES = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ok = report.outcome == "passed" and not hasattr(report, "wasxfail")
        _OUTCOMES[crit].append((report.nodeid, ok))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_OUTCOMES):
        results = _OUTCOMES[crit]
        ok = all(r for _, r in results)
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            for nodeid, r in results:
                if not r:
                    terminalreporter.write_line(f"    failed: {nodeid}")
