import pytest

from ultrasolv.harness.catalog import example_catalog_path, ingest_catalog

from oracles import gap_reference


@pytest.fixture(scope="session")
def catalog():
    return ingest_catalog()


@pytest.fixture(scope="session")
def examples():
    return {e.id: e for e in ingest_catalog(example_catalog_path())}


@pytest.fixture(scope="session")
def gap():
    return gap_reference()


@pytest.fixture(scope="session")
def by_id(catalog):
    return {e.id: e for e in catalog}


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_line(request):
    """Record one pass/fail line for the acceptance summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(label: str, passed: bool, detail: str) -> bool:
        lines.append(f"{label} {'PASS' if passed else 'FAIL'}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
