import numpy as np
import pytest
from hypothesis import strategies as st

from stochorder.dist import make_discrete


@st.composite
def discrete_laws(draw, max_atoms=12, lo=-40, hi=40):
    """Distributions on quarter-integers with integer weights."""
    n = draw(st.integers(1, max_atoms))
    values = draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n, unique=True))
    weights = draw(st.lists(st.integers(1, 20), min_size=n, max_size=n))
    return make_discrete([v / 4 for v in values], weights)


def random_law(rng, max_atoms=12, scale=10.0):
    n = int(rng.integers(1, max_atoms + 1))
    values = np.round(rng.normal(0, scale, n), 3)
    weights = rng.dirichlet(np.ones(n)) + 1e-3
    return make_discrete(values, weights)


@pytest.fixture
def u012():
    return make_discrete([0, 1, 2], [1, 1, 1])


@pytest.fixture
def u01():
    return make_discrete([0, 1], [1, 1])


@pytest.fixture
def spread_pair():
    """{-1, 1} each 1/2 below {-2, 0, 1} with probs (1/4, 1/4, 1/2) in convex order."""
    return make_discrete([-1, 1], [1, 1]), make_discrete([-2, 0, 1], [1, 1, 2])
