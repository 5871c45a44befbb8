import pytest

from baseorder.catalog import build_catalog

_acceptance: dict[str, str] = {}


@pytest.fixture(scope="session")
def catalog():
    return build_catalog(seed=0)


@pytest.fixture(scope="session")
def catalog_small(catalog):
    """Catalog entries with at most ten elements."""
    return [e for e in catalog if e.matroid.n <= 10]


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _acceptance[name] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{name}: {_acceptance[name]}")
