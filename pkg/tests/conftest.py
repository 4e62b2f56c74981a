import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "kernel",
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("kernel")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
