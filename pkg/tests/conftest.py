import io

import pytest
from hypothesis import HealthCheck, settings

from signed_louvain import Resolution, build_graph, load_edge_list

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

STAR_TEXT = "0 1 -1\n0 2 -1\n0 3 -1\n0 4 -1\n"
STAR_SIGMA_F = [0, 1, 1, 1, 1]
STAR_SIGMA_0 = [0, 1, 2, 3, 4]


@pytest.fixture
def star():
    """5 nodes, 4 unit negative edges from node 0 to nodes 1..4."""
    graph, _ = load_edge_list(io.StringIO(STAR_TEXT))
    return graph


@pytest.fixture
def unit_resolution():
    return Resolution(1.0, 1.0)


@pytest.fixture
def triangle_positive():
    return build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
