import pytest

from orelab.catalog import builtin, builtin_catalog


@pytest.fixture(scope="session")
def catalog_groups():
    return [(e.name, e.build()) for e in builtin_catalog()]


@pytest.fixture(scope="session")
def S3():
    return builtin("S3").build()


@pytest.fixture(scope="session")
def S4():
    return builtin("S4").build()


def pytest_configure(config):
    config.acceptance_results = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "acceptance_results", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
