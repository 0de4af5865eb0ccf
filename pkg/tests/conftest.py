from __future__ import annotations

import pytest

import helpers


@pytest.fixture(scope="session")
def c6():
    return helpers.cycle_graph(6)


@pytest.fixture(scope="session")
def p5():
    return helpers.path_graph(5)


@pytest.fixture(scope="session")
def k4():
    return helpers.complete_graph(4)


@pytest.fixture(scope="session")
def d3():
    return helpers.dipole(3)


@pytest.fixture(scope="session")
def small_corpus():
    """All connected simple graphs on up to 6 vertices (fast subset of the
    full acceptance corpus)."""
    from bottleneck_lab.corpus import connected_graphs_up_to

    return connected_graphs_up_to(6)
