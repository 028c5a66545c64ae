"""Shared fixtures: small cached grids and materials for the unit tests."""

import numpy as np
import pytest

from elastobie import make_curve, make_material, sample_grid


@pytest.fixture(scope="session")
def circle48():
    return sample_grid(make_curve("circle"), 48)


@pytest.fixture(scope="session")
def starfish32():
    return sample_grid(make_curve("starfish"), 32)


@pytest.fixture(scope="session")
def mat21():
    """Benchmark exterior material lambda=2, mu=1 at a low frequency."""
    return make_material(lam=2.0, mu=1.0, omega=4.0)


@pytest.fixture(scope="session")
def mat11():
    return make_material(lam=1.0, mu=1.0, omega=4.0)


@pytest.fixture(scope="session")
def mat28():
    return make_material(lam=2.0, mu=8.0, omega=4.0)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
