import pytest

from nordenhyp.sampling import rng


@pytest.fixture
def gen():
    return rng(20240817)
