import numpy as np
import pytest
from hypothesis import settings, strategies as st

from spa_detect.qmat import BipartiteDims, random_density

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims_strategy = st.sampled_from([BipartiteDims(2, 2), BipartiteDims(2, 3), BipartiteDims(3, 2), BipartiteDims(3, 3)])


def rand_rho(seed, dims, rank=None):
    return random_density(dims, np.random.default_rng(seed), rank=rank)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
