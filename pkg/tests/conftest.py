"""Test fixtures for the trirep tests."""

import pytest
import logging

import trirep.builders  # noqa: F401
from trirep.simcomplex import Complex, Embedding

# Configure logging
logging.basicConfig(level=logging.DEBUG)


@pytest.fixture(autouse=True)
def reset_registry():
    """Reset the builder registry between tests to ensure isolation."""
    from trirep.core import _BUILDER_REGISTRY

    # Store original registry, including the enabled flags
    original = {key: dict(info) for key, info in _BUILDER_REGISTRY.items()}

    yield

    # Restore original registry after test
    _BUILDER_REGISTRY.clear()
    _BUILDER_REGISTRY.update(original)


@pytest.fixture(autouse=True)
def reset_builder_manager():
    """Reset the BuilderManager singleton between tests."""
    from trirep.core import BuilderManager, representations

    original_instance = BuilderManager._instance

    vars(representations).clear()
    BuilderManager._builders = []
    BuilderManager._initialized = False

    yield

    vars(representations).clear()
    BuilderManager._instance = original_instance
    BuilderManager._builders = []
    BuilderManager._initialized = False


@pytest.fixture
def octahedron():
    """Octahedron with vertices +-e1, +-e2, +-e3 (ids 1..6 in that order)."""
    cx = Complex()
    emb = Embedding(3)
    points = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    for p in points:
        emb[cx.add_vertex()] = p
    for x in (1, 2):
        for y in (3, 4):
            for z in (5, 6):
                cx.add_triangle(x, y, z)
    return cx, emb


@pytest.fixture
def single_triangle():
    cx = Complex()
    emb = Embedding(3)
    for p in [(0, 0, 0), (1, 0, 0), (0, 1, 0)]:
        emb[cx.add_vertex()] = p
    cx.add_triangle(1, 2, 3)
    return cx, emb
