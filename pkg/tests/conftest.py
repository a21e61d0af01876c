import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fal",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fal")

from fal_spectrum import PrecisionContext, builtin_catalog


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def l41():
    return builtin_catalog()["L41"]
