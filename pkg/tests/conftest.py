import pytest
from hypothesis import HealthCheck, settings

from resurgence.schemes import (
    SkeletonSpec,
    collinear_fixture,
    cone_scheme,
    generic_points,
    skeleton_scheme,
)

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def plane_points():
    """Generic plane point sets keyed by n."""
    return {n: generic_points(2, n, seed=0) for n in range(1, 12)}


@pytest.fixture(scope="session")
def collinear():
    return collinear_fixture()


@pytest.fixture(scope="session")
def lines4():
    return skeleton_scheme(SkeletonSpec(2, 2, 4))


@pytest.fixture(scope="session")
def cone5():
    return cone_scheme(generic_points(2, 5, seed=0))
