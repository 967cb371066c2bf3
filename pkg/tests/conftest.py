import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from tropdiv.divisor import Divisor
from tropdiv.graph import Multigraph, WeightedGraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FULL = os.environ.get("TROPDIV_FULL") == "1"


@st.composite
def multigraphs(draw, max_vertices=4, max_extra=3, loops=True, min_vertices=1):
    """Connected multigraph: random spanning tree plus extra edges."""
    n = draw(st.integers(min_vertices, max_vertices))
    names = tuple(f"v{i}" for i in range(n))
    edges = [(names[draw(st.integers(0, i - 1))], names[i]) for i in range(1, n)]
    extra = draw(st.integers(0, max_extra))
    for _ in range(extra):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        if a == b and not loops:
            if n == 1:
                continue
            b = (a + 1) % n
        edges.append((names[a], names[b]))
    return Multigraph(names, tuple(edges))


@st.composite
def weighted_graphs(draw, max_vertices=3, max_extra=2, max_weight=2):
    G = draw(multigraphs(max_vertices, max_extra))
    w = {v: draw(st.integers(0, max_weight)) for v in G.vertices}
    return WeightedGraph(G, w)


def divisors(vertices, lo=-2, hi=4):
    return st.lists(st.integers(lo, hi), min_size=len(vertices), max_size=len(vertices)).map(
        lambda cs: Divisor(vertices, cs)
    )


def D(G, **coeffs):
    return Divisor.from_dict(G.vertices, coeffs)
