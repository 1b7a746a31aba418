"""Shared heavy artifacts, built once per session."""

import sys

import pytest

from sl2unitals import grp, para, unital


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance")
    for num in sorted(results):
        ok, detail = results[num]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict} - {detail}")


@pytest.fixture(scope="session")
def q4_paras():
    return para.enumerate_parallelisms(grp.short_blocks(4))


@pytest.fixture(scope="session")
def q4_types():
    return unital.affine_types(4)


@pytest.fixture(scope="session")
def q4_auts(q4_types):
    return tuple(unital.aut_affine(u) for u in q4_types)


@pytest.fixture(scope="session")
def q5_solutions():
    G = grp.sl2(5)
    return unital.search_D_sets(G, unital.canonical_S(5))
