import numpy as np
import pytest

from matherbeta.conjugacy import SolverConfig
from matherbeta.diophantine import GOLDEN_MEAN, SILVER_FREQ, DiophantineClass
from matherbeta.twist_map import MapSpec

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_RESULTS: dict[str, str] = {}


def record_acceptance(key: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[key] = f"{'PASS' if passed else 'FAIL'}  {key}: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])


@pytest.fixture(scope="session")
def golden():
    return GOLDEN_MEAN


@pytest.fixture(scope="session")
def silver():
    return SILVER_FREQ


@pytest.fixture(scope="session")
def integrable_map():
    return MapSpec.integrable()


@pytest.fixture(scope="session")
def standard_005():
    return MapSpec.standard(0.05)


@pytest.fixture(scope="session")
def standard_01():
    return MapSpec.standard(0.1)


@pytest.fixture(scope="session")
def solver_cfg():
    return SolverConfig(N=64)


@pytest.fixture(scope="session")
def dioph():
    return DiophantineClass.create(tau=0.5, M=6.0, m_max=10 ** 5)


@pytest.fixture(scope="session")
def dioph_fast():
    return DiophantineClass.create(tau=0.5, M=6.0, m_max=2000)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
