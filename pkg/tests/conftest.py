"""
Pytest configuration and shared fixtures for rainbowham tests
"""

import shutil
import tempfile
from pathlib import Path
from typing import Callable

import pytest

from rainbowham.core.codec import save_collection
from rainbowham.core.collection import GraphCollection, complete_rows
from rainbowham.persistence import InMemoryReportRepository


# =============================================================================
# TEST FIXTURES
# =============================================================================


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests"""
    tmp_dir = tempfile.mkdtemp()
    yield Path(tmp_dir)
    shutil.rmtree(tmp_dir, ignore_errors=True)


@pytest.fixture
def complete_collection() -> Callable[[int, int], GraphCollection]:
    """Factory: s copies of K_n (s defaults to n)"""

    def build(n: int, s: int = None) -> GraphCollection:
        return GraphCollection(n, (complete_rows(n),) * (n if s is None else s))

    return build


@pytest.fixture
def triangle_collection() -> GraphCollection:
    """Three colors on a triangle: color c holds only edge (c, c+1 mod 3)"""
    return GraphCollection.from_edge_lists(3, [[(0, 1)], [(1, 2)], [(2, 0)]])


@pytest.fixture
def collection_file(temp_dir) -> Callable[[GraphCollection, str], Path]:
    """Factory writing a collection to a file in the temp directory"""

    def write(g: GraphCollection, name: str = "collection.json") -> Path:
        path = temp_dir / name
        save_collection(g, path)
        return path

    return write


@pytest.fixture
def report_repository() -> InMemoryReportRepository:
    return InMemoryReportRepository()


# =============================================================================
# HELPER FUNCTIONS
# =============================================================================


def edge_lists(g: GraphCollection):
    """Edge lists per color, for readable assertions"""
    return [sorted(g.edges(c)) for c in range(g.colors)]


# =============================================================================
# PYTEST CONFIGURATION
# =============================================================================


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "unit: Fast unit tests with no I/O"
    )
    config.addinivalue_line(
        "markers", "integration: Cross-module suites (solver/certificate agreement, sweeps)"
    )
    config.addinivalue_line(
        "markers", "e2e: Tests driving the command-line interface in a subprocess"
    )
    config.addinivalue_line(
        "markers", "slow: Tests taking more than 5 seconds to complete"
    )
