import random

import pytest
from hypothesis import given, strategies as st

from tropdiv.divisor import Divisor, has_effective_representative, principal_generator, pullback
from tropdiv.graph import InputError, Multigraph, VertexMap, WeightedGraph, banana, cycle, hat, rose, subdivide, weighted_genus
from tropdiv.rank import (
    canonical,
    clear_caches,
    rank_bruteforce,
    rank_plain,
    rank_sharp,
    rank_weighted,
    riemann_roch_check,
    rose_rank,
)
from tropdiv.sampling import random_divisor, random_wedge

from conftest import D, divisors, multigraphs, weighted_graphs

theta = banana(3)
C3 = cycle(3)
point = Multigraph(("v",))


def test_rank_plain_examples():
    assert rank_plain(theta, D(theta, v0=-1)).rank == -1
    assert rank_plain(C3, D(C3, v0=1)).rank == 0
    assert rank_bruteforce(C3, D(C3, v0=1)).rank == 0
    assert rank_plain(C3, Divisor.zero(C3.vertices)).rank == 0


def test_rank_plain_ignores_loops():
    assert rank_plain(rose(2), Divisor(("v",), (3,))).rank == 3


def test_rank_sharp_examples():
    assert rank_sharp(rose(2), Divisor(("v",), (3,))).rank == 1
    assert rank_sharp(rose(1), Divisor(("v",), (1,))).rank == 0
    E = D(theta, v0=2, v1=1)
    assert rank_sharp(theta, E) == rank_plain(theta, E)


def test_rank_weighted_examples():
    assert rank_weighted(WeightedGraph(point, {"v": 1}), Divisor(("v",), (2,))).rank == 1
    assert rank_weighted(WeightedGraph(point, {"v": 2}), Divisor(("v",), (2,))).rank == 1
    GW = WeightedGraph(theta, {"v1": 2})
    assert rank_weighted(GW, Divisor.zero(theta.vertices)).rank == 0


def test_canonical_examples():
    assert canonical(WeightedGraph.unweighted(theta)) == D(theta, v0=1, v1=1)
    assert canonical(WeightedGraph(point, {"v": 1})) == Divisor(("v",), (0,))
    assert canonical(WeightedGraph(point, {"v": 2})) == Divisor(("v",), (2,))
    assert canonical(rose(3)) == Divisor(("v",), (4,))


def test_riemann_roch_examples():
    rep = riemann_roch_check(theta, canonical(theta))
    assert (rep.rank, rep.rank_residual, rep.rhs) == (1, 0, 1) and rep.holds
    GW = WeightedGraph(C3, {"v0": 1, "v2": 1})
    rep = riemann_roch_check(GW, Divisor.zero(C3.vertices))
    assert rep.rank_residual == rep.genus - 1 and rep.holds
    E = D(C3, v0=2 * rep.genus - 1)
    rep = riemann_roch_check(GW, E)
    assert rep.rank == E.degree - rep.genus and rep.holds


def test_rose_rank_examples():
    assert rose_rank(2, 3) == 1
    assert rose_rank(1, 0) == 0
    assert rose_rank(3, -1) == -1
    with pytest.raises(InputError):
        rose_rank(2, 5)
    with pytest.raises(InputError):
        rose_rank(0, 0)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_rose_rank_matches_weighted_rank(g):
    for d in range(-2, 2 * g + 1):
        E = Divisor(("v",), (d,))
        assert rank_weighted(WeightedGraph(point, {"v": g}), E).rank == rose_rank(g, d)
        assert rank_sharp(rose(g), E).rank == rose_rank(g, d)


def test_rank_rejects_foreign_divisor():
    with pytest.raises(InputError):
        rank_plain(theta, Divisor.zero(("x", "y")))


# -- search vs enumeration ----------------------------------------------------


@given(multigraphs(max_vertices=4, max_extra=3), st.data())
def test_rank_matches_bruteforce(G, data):
    E = data.draw(divisors(G.vertices, -1, 3))
    fast, slow = rank_plain(G, E), rank_bruteforce(G, E)
    assert fast.rank == slow.rank
    assert fast.witness == slow.witness


@given(multigraphs(max_vertices=4, max_extra=3), st.data())
def test_witness_certifies_rank(G, data):
    E = data.draw(divisors(G.vertices, -2, 4))
    res = rank_plain(G, E)
    assert res.rank <= max(E.degree, -1)
    W = res.witness
    assert W.is_effective() and W.degree == res.rank + 1
    assert not has_effective_representative(G, E - W)


def test_cache_does_not_change_results():
    G = banana(4)
    E = D(G, v0=3, v1=1)
    first = rank_plain(G, E)
    clear_caches()
    assert rank_plain(G, E) == first


def test_candidate_restriction_on_subdivision():
    # Vertices of a loopless graph are rank-determining in its subdivisions.
    H, vmap = subdivide(theta, 2)
    E = pullback(vmap, D(theta, v0=2, v1=1))
    assert rank_plain(H, E, candidates=theta.vertices).rank == rank_plain(H, E).rank


# -- invariants ---------------------------------------------------------------


@given(multigraphs(max_vertices=3, max_extra=3), st.data())
def test_plain_rank_bounds_sharp_rank(G, data):
    E = data.draw(divisors(G.vertices, -1, 4))
    assert rank_plain(G, E).rank >= rank_sharp(G, E).rank


@given(multigraphs(max_vertices=3, max_extra=3), st.data())
def test_sharp_rank_stable_under_loop_refinement(G, data):
    E = data.draw(divisors(G.vertices, -1, 4))
    counts = {i: data.draw(st.integers(1, 3)) for i in G.loop_indices}
    H, vmap = subdivide(G, counts)
    assert rank_sharp(G, E).rank == rank_plain(H, pullback(vmap, E)).rank


@given(multigraphs(max_vertices=3, max_extra=2, loops=False), st.integers(1, 2), st.data())
def test_plain_rank_stable_under_uniform_subdivision(G, n, data):
    E = data.draw(divisors(G.vertices, -1, 3))
    H, vmap = subdivide(G, n)
    assert rank_plain(G, E).rank == rank_plain(H, pullback(vmap, E)).rank


@given(st.integers(0, 10**6), st.integers(0, 2), st.integers(0, 2))
def test_plain_rank_stable_under_two_sided_subdivision(seed, m, n):
    rng = random.Random(seed)
    G, H1, H2, _ = random_wedge(rng)
    E = random_divisor(rng, G.vertices, -1, 3)
    counts = [m if i < len(H1.edges) else n for i in range(len(G.edges))]
    Gs, vmap = subdivide(G, counts)
    assert rank_plain(G, E).rank == rank_plain(Gs, pullback(vmap, E)).rank


@given(st.integers(0, 10**6))
def test_cut_vertex_rank_inequalities(seed):
    rng = random.Random(seed)
    G, H1, H2, c = random_wedge(rng, loops=True)
    D1 = random_divisor(rng, H1.vertices, -1, 3)
    D2 = random_divisor(rng, H2.vertices, -1, 3)
    i1 = pullback(VertexMap.inclusion(H1, G), D1)
    i2 = pullback(VertexMap.inclusion(H2, G), D2)
    r1, r2 = rank_plain(H1, D1).rank, rank_plain(H2, D2).rank
    assert rank_plain(G, i1 + i2).rank >= min(r1, r2)
    assert r1 >= rank_plain(G, i1).rank
    assert r2 >= rank_plain(G, i2).rank


@given(weighted_graphs(max_vertices=3, max_extra=2, max_weight=1), st.data())
def test_weighted_rank_is_class_function(GW, data):
    E = data.draw(divisors(GW.vertices, -1, 4))
    v = data.draw(st.sampled_from(GW.vertices))
    k = data.draw(st.integers(-2, 2))
    E2 = E + k * principal_generator(GW.graph, v)
    assert rank_weighted(GW, E).rank == rank_weighted(GW, E2).rank


@given(multigraphs(max_vertices=3, max_extra=3), st.data())
def test_clifford_bound(G, data):
    E = data.draw(divisors(G.vertices, -1, 4))
    K = canonical(G)
    r, s = rank_sharp(G, E).rank, rank_sharp(G, K - E).rank
    if r >= 0 and s >= 0:
        assert 2 * r <= E.degree


@given(weighted_graphs(max_vertices=3, max_extra=2), st.data())
def test_riemann_roch_random(GW, data):
    E = data.draw(divisors(GW.vertices, -2, 5))
    rep = riemann_roch_check(GW, E)
    assert rep.holds, rep
    if rep.degree >= 2 * rep.genus - 1:
        assert rep.rank == rep.degree - rep.genus


@given(weighted_graphs(max_vertices=3, max_extra=2))
def test_canonical_degree(GW):
    assert canonical(GW).degree == 2 * weighted_genus(GW) - 2


def test_weighted_zero_weight_is_sharp():
    E = D(theta, v0=1)
    assert rank_weighted(WeightedGraph.unweighted(theta), E).rank == rank_sharp(theta, E).rank
    G = Multigraph(("a", "b"), (("a", "b"), ("a", "a")))
    E = D(G, a=2)
    assert rank_weighted(WeightedGraph.unweighted(G), E) == rank_sharp(G, E)
    assert hat(G)[0].vertices[-1] == "a#loop0#mid"
