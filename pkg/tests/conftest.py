import pytest

from aerialbs.scenario import load_ledger


@pytest.fixture(scope="session")
def ledger():
    return load_ledger()


@pytest.fixture
def rwd(ledger):
    return ledger.platforms["rwd"].spec


@pytest.fixture
def pico(ledger):
    return ledger.bs_profiles["pico"]


@pytest.fixture
def micro(ledger):
    return ledger.bs_profiles["micro"]


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Criterion number -> (passed, summary line) for the end-of-run report."""
    return request.config.stash.setdefault(_ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        passed, line = results[n]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {n:>2}. {line}")
