import numpy as np
import pytest

from polystar.quadrature import sphere_rule


@pytest.fixture(scope="session")
def rule60():
    """Sphere rule on S^2 exact in degree 60, shared across modules."""
    return sphere_rule(3, 30)


@pytest.fixture(scope="session")
def rule20():
    return sphere_rule(3, 10)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
