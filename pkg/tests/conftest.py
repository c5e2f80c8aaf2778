import pytest

from nikodym.geometry import make_geometry
from nikodym.gf import field_of_order, prime_power

FIELD_GRID = [2, 3, 4, 5, 7, 8, 9]

_acceptance: dict[int, list[str]] = {}


def geom(q: int, n: int = 2):
    p, k = prime_power(q)
    return make_geometry(p, k, n)


def field(q: int):
    return field_of_order(q)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _acceptance.setdefault(number, []).append(status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        results = _acceptance[number]
        if "FAIL" in results:
            status = "FAIL"
        elif all(r == "SKIP" for r in results):
            status = "SKIP"
        else:
            status = "PASS"
        terminalreporter.write_line(f"criterion {number}: {status} ({len(results)} checks)")
