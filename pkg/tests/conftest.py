import pytest

from planar_hydrogen import GridSpec, PhysicalParams, PotentialKind, spectrum

BENCHMARK_LAMBDAS = (0.2e-5, 0.2e-4, 0.2e-3)

_CRITERIA = []


@pytest.fixture(scope="session")
def benchmark_states():
    """Lowest three l = 0 states for each benchmark lambda on the default grids."""
    return {
        lam: spectrum(PotentialKind.CHERN_SIMONS, PhysicalParams(lam=lam), GridSpec.for_lambda(lam), n_max=3)
        for lam in BENCHMARK_LAMBDAS
    }


@pytest.fixture(scope="session")
def coulomb_grid():
    return GridSpec(x_min=1e-4, x_max=60.0, n_steps=10000, origin="regular")


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(label, passed, detail):
        _CRITERIA.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
