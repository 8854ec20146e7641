import time
from contextlib import contextmanager

import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Context manager recording one acceptance criterion's verdict and runtime."""
    results = request.config.stash[_RESULTS]

    @contextmanager
    def run(number: int, title: str, budget: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            passed = ok and elapsed < budget
            results[number] = (title, passed, elapsed, budget)
            print(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}  ({elapsed:.2f}s, limit {budget:g}s)")
        assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s (limit {budget}s)"

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        title, passed, elapsed, budget = results[number]
        terminalreporter.write_line(
            f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}  ({elapsed:.2f}s, limit {budget:g}s)"
        )
