import pytest
from hypothesis import settings

from acri.grid import Grid

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def grid101():
    return Grid.uniform(101)


@pytest.fixture(scope="session")
def grid21():
    return Grid.uniform(21)


_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, what): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, what = mark.args
    entry = _criteria.setdefault(n, {"what": what, "failed": []})
    if rep.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        verdict = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {n:>2}: {verdict}  {e['what']}"
        if e["failed"]:
            line += f"  [failing: {', '.join(e['failed'])}]"
        terminalreporter.write_line(line)
