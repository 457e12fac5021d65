import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def acceptance(request):
    """Record one acceptance criterion's verdict for the terminal summary."""
    store = request.config.stash[_RESULTS]

    def record(number: int, title: str, passed: bool, detail: str = ""):
        store[number] = (title, bool(passed), detail)
        return passed

    return record


@pytest.fixture(scope="session")
def warm_kernels():
    # Compile (or load cached) numba kernels before anything is timed.
    from distspec import characterize, graphs, linalg

    g = graphs.dumbbell(2, 4)
    characterize.oracle_integral(g, "d")
    linalg.float_eigenvalues(graphs.distance_matrix(g))
    return True


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_RESULTS, {})
    if not store:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(store):
        title, passed, detail = store[number]
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" -- {detail}"
        tr.write_line(line)
    passed = sum(1 for _, ok, _ in store.values() if ok)
    tr.write_line(f"{passed}/{len(store)} acceptance criteria passed")
