import functools

import pytest

from sharply.nearfield import build_affine_group, build_dickson_nearfield, build_field_nearfield
from sharply.perm import catalog


@functools.lru_cache(maxsize=None)
def field(q):
    return build_field_nearfield(q)


@functools.lru_cache(maxsize=None)
def dickson(q=9):
    return build_dickson_nearfield(q)


@functools.lru_cache(maxsize=None)
def agl(q, twisted=False):
    return build_affine_group(dickson(q) if twisted else field(q))


def sharp2_corpus():
    """Finite sharply 2-transitive groups used by the corpus-wide checks."""
    groups = [agl(q) for q in (3, 4, 5, 7, 8, 9, 11)]
    groups.append(agl(9, twisted=True))
    groups += [catalog("S(3)"), catalog("A(4)")]
    return groups


@pytest.fixture(scope="session")
def corpus():
    return sharp2_corpus()


# one PASS/FAIL line per acceptance criterion at the end of the run

_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _criteria[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        status = "PASS" if _criteria[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
