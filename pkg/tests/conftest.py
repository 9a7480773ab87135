"""Pytest configuration and fixtures."""
import os

import pytest

# Keep runs independent of a developer's shell or .env
for _name in [key for key in os.environ if key.startswith("SPECTRA_")]:
    del os.environ[_name]

from screening.config import get_settings
from screening.models.basis import BasisSpec
from screening.services.potential_service import make_potential


@pytest.fixture(autouse=True)
def fresh_settings():
    """Drop the cached Settings so monkeypatched environment variables take effect."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def hulthen():
    """Hulthen potential used throughout the published s-wave table (A = 1, mu = 0.21)."""
    return make_potential("hulthen", strength=1.0, mu=0.21)


@pytest.fixture
def yukawa():
    """Yukawa potential with a moderate screening length."""
    return make_potential("yukawa", strength=1.0, mu=0.5)


@pytest.fixture
def s_wave_basis():
    """Basis the s-wave Hulthen levels are published with."""
    return BasisSpec(ell=0, lam=0.8, n_basis=50)


@pytest.fixture
def small_basis():
    """Cheap basis for algebraic identities."""
    return BasisSpec(ell=0, lam=1.0, n_basis=10)
