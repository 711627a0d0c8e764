"""
Shared fixtures for the quotient_germs test suite.
"""

from pathlib import Path

import pytest

from quotient_germs.config import RunConfig
from quotient_germs.logger import reset_logger
from quotient_germs.quotient_catalog import Family, catalog_entry
from quotient_germs.resolution_graph import ResolutionGraph

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def fresh_logger():
    """Every test gets a logger bound to the current stderr."""
    reset_logger()
    yield
    reset_logger()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def e8_graph() -> ResolutionGraph:
    return catalog_entry(Family.ICOSAHEDRAL, m=1).graph


@pytest.fixture
def d4_graph() -> ResolutionGraph:
    return catalog_entry(Family.DIHEDRAL, n=3, q=2).graph


@pytest.fixture
def small_config() -> RunConfig:
    """Sweep ranges small enough for unit tests."""
    return RunConfig(max_n=8, max_b=3, max_m=4, samples=2, seed=7)
