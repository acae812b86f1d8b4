import numpy as np
import pytest

from pa1d import PaddingConfig, simulate_traces, smooth_bump, step_profile


@pytest.fixture(scope="session")
def pad2() -> PaddingConfig:
    return PaddingConfig(2)


@pytest.fixture(scope="session")
def bump_profile():
    return smooth_bump()


@pytest.fixture(scope="session")
def step_prof():
    return step_profile()


@pytest.fixture(scope="session")
def oracle_trace_100(bump_profile, pad2):
    """Noiseless bump trace from the image-summation solver, N = 100."""
    return simulate_traces(bump_profile, pad2, 100, source="oracle")


@pytest.fixture(scope="session")
def out_grid():
    return np.linspace(-1.0, 1.0, 401)
