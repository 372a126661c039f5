import pytest

from semiconj.families import full_transformation_monoid, symmetric_group, symmetric_inverse

_criteria: dict[str, tuple] = {}
_outcomes: dict[str, bool] = {}


@pytest.fixture(scope="session")
def IS():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = symmetric_inverse(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def T():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = full_transformation_monoid(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def Sym():
    return lambda n: symmetric_group(n)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid in _criteria and (report.when == "call" or report.failed):
        prev = _outcomes.get(report.nodeid, True)
        _outcomes[report.nodeid] = prev and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (num, title) in sorted(_criteria.items(), key=lambda kv: (kv[1][0], kv[0])):
        if nodeid in _outcomes:
            verdict = "PASS" if _outcomes[nodeid] else "FAIL"
            name = nodeid.split("::")[-1]
            terminalreporter.write_line(f"[{verdict}] criterion {num}: {title} ({name})")
