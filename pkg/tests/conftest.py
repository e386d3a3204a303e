import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit_s): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title, limit = mark.args
    elapsed = dict(item.user_properties).get("elapsed_s")
    _criteria[number] = (title, limit, rep.passed, elapsed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        title, limit, passed, elapsed = _criteria[number]
        took = f"{elapsed:.2f}s" if elapsed is not None else "n/a"
        tr.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}  [{took} / limit {limit}s]")
    passed = sum(1 for *_, ok, _ in _criteria.values() if ok)
    tr.write_line(f"{passed}/{len(_criteria)} criteria passed")
