import random
from itertools import combinations

import pytest
from hypothesis import settings, strategies as st
from networkx.generators.atlas import graph_atlas_g

from sparselim.graph import Graph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def all_graphs(min_vertices, max_vertices):
    """Every graph on min..max vertices, one per isomorphism class."""
    return [
        Graph(g.number_of_nodes(), list(g.edges()))
        for g in graph_atlas_g()
        if min_vertices <= g.number_of_nodes() <= max_vertices
    ]


def random_graph(rng, n, density=None):
    density = rng.random() if density is None else density
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < density])


@st.composite
def graphs(draw, min_vertices=0, max_vertices=6):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@pytest.fixture
def rng():
    return random.Random(20240611)
