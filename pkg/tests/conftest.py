import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--long-run", action="store_true", default=False,
                     help="run the order-32 norm computation (about a minute per core)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long-run") or os.environ.get("HADQUANT_LONG_RUN") == "1":
        return
    skip = pytest.mark.skip(reason="long-run; pass --long-run")
    for item in items:
        if "long_run" in item.keywords:
            item.add_marker(skip)


# one summary line per acceptance criterion
_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "outcomes": []})
    if call.excinfo is None:
        entry["outcomes"].append("pass")
    elif call.excinfo.errisinstance(pytest.skip.Exception):
        entry["outcomes"].append("skip")
    else:
        entry["outcomes"].append("fail")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        outs = entry["outcomes"]
        status = "FAIL" if "fail" in outs else "PASS" if "pass" in outs else "SKIP"
        note = " (long-run part skipped)" if status == "PASS" and "skip" in outs else ""
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}{note}")
