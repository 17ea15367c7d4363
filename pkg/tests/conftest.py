import numpy as np
import pytest

from eml.market import DistributionSpec, MarketParams


@pytest.fixture
def study_params():
    """Parameters of the deployed decision study (fixed supplies/prices)."""
    return MarketParams(q_o=0.6, delta=0.2, a=2.0, n_buyers=50,
                        n_resellers=50)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def beta22():
    return DistributionSpec.beta22()
