from __future__ import annotations

import re
import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)")
_RESULTS: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long exact searches, run with ADDPOSET_SLOW=1")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = _CRITERION.search(item.name)
    if not m:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = next((v for k, v in item.user_properties if k == "detail"), "")
        _RESULTS.setdefault(int(m.group(1)), []).append((rep.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        outcomes = [o for o, _ in _RESULTS[n]]
        status = "FAIL" if "failed" in outcomes else "PASS" if "passed" in outcomes else "SKIP"
        details = "; ".join(d for _, d in _RESULTS[n] if d)
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {details}")
