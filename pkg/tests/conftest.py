import pytest

from xlmimo import ArrayConfig, LinkBudget

# 2.4 GHz setup with the rounded spacing quoted for the single-user figures
SPACING = 0.0628
WAVELENGTH = 0.1256


@pytest.fixture
def xl_array():
    return ArrayConfig(2048, SPACING, WAVELENGTH)


@pytest.fixture
def budget_50db():
    return LinkBudget(1e5)
