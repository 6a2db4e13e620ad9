import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from solvstates import SpectrumModel

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def harmonic():
    return SpectrumModel.harmonic()


@pytest.fixture(scope="session")
def pt22():
    return SpectrumModel.poschl_teller(2.0, 2.0)


@pytest.fixture(scope="session")
def pt_soft():
    return SpectrumModel.poschl_teller(3.5, 1.2)


@pytest.fixture(scope="session")
def well():
    return SpectrumModel.square_well()


@pytest.fixture(scope="session")
def custom_table():
    # strictly increasing, zero ground level, mildly irregular gaps
    rng = np.random.default_rng(20260814)
    gaps = 1.0 + 0.35 * rng.random(39)
    return SpectrumModel.custom(np.concatenate(([0.0], np.cumsum(gaps))))


@pytest.fixture(scope="session")
def all_models(harmonic, pt22, pt_soft, well, custom_table):
    return {
        "harmonic": harmonic,
        "pt22": pt22,
        "pt_soft": pt_soft,
        "well": well,
        "custom": custom_table,
    }
