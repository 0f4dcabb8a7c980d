import numpy as np
import pytest

from desirability import GeneratedSet, kappa1, kappa3, kappa4


@pytest.fixture
def scaled_pair():
    """Scaling closure of (-1, 1) and (1, -2)."""
    return GeneratedSet([[-1.0, 1.0], [1.0, -2.0]], kappa3())


@pytest.fixture
def dominance_single():
    return GeneratedSet([[-1.0, 1.0]], kappa4())


@pytest.fixture
def conic_single():
    return GeneratedSet([[-1.0, 2.0]], kappa1())


def random_conic_coherent(rng, n):
    """Generators with nonnegative expectation under a random interior mass function."""
    p = rng.dirichlet(np.ones(n))
    G = rng.uniform(-2.0, 2.0, size=(int(rng.integers(1, 4)), n))
    G -= (G @ p)[:, None] - rng.uniform(0.05, 0.5, size=(G.shape[0], 1))
    return G, p
