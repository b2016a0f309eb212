import numpy as np
import pytest
from hypothesis import settings

from hyperfns.core import Space

# Fresh checkouts must pass deterministically; pin the example stream.
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(params=[(2, 1), (3, 2), (5, 3), (7, 2)], ids=lambda pq: f"p{pq[0]}q{pq[1]}")
def space(request):
    return Space(*request.param)
