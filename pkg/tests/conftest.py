import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from propus.corpus import corpus_entries, find_record  # noqa: E402
from propus.families import DifferenceFamily  # noqa: E402
from propus.paramsets import PropusParameterSet  # noqa: E402
from propus.residues import generate_subgroup, orbit_table  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run the long searches and brute-force checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def entries():
    return corpus_entries()


@pytest.fixture(scope="session")
def fam7():
    t = orbit_table(7, generate_subgroup(7, [2]))
    return DifferenceFamily.from_reps(PropusParameterSet(7, (3, 3, 3, 1), 3), t, [3], [3], [0])


@pytest.fixture(scope="session")
def fam13():
    t = orbit_table(13, generate_subgroup(13, [3]))
    return DifferenceFamily.from_reps(PropusParameterSet(13, (6, 6, 6, 3), 8), t, [1, 4], [4, 7], [4])


@pytest.fixture(scope="session")
def v67_families():
    return [e.family for e in corpus_entries((1,)) if e.family.v == 67]


@pytest.fixture(scope="session")
def table1_first():
    return find_record(1, "(67;33,28,28,31;53)").difference_families()[0]


_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.skipped:
        return
    if rep.when == "call" or rep.failed:
        num, title = mark.args
        key = (num, item.name)
        prev = _CRITERIA.get(key, (title, True))
        _CRITERIA[key] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    by_num: dict = {}
    for (num, _), (title, ok) in sorted(_CRITERIA.items()):
        t, all_ok = by_num.get(num, (title, True))
        by_num[num] = (t, all_ok and ok)
    for num, (title, ok) in sorted(by_num.items()):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
