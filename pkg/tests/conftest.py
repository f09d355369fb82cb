import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bicoarse.words import Word, reduce

settings.register_profile("default", max_examples=200, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def words(rank=2, max_size=12, reduced=True):
    letters = "abcdefghijklmnopqrstuvwxyz"[:rank]
    letters += letters.upper()
    raw = st.text(alphabet=letters, max_size=max_size).map(lambda t: Word(t, rank))
    return raw.map(reduce) if reduced else raw


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
