import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from tropdiv.divisor import (
    Divisor,
    divisor_of_function,
    has_effective_representative,
    is_equivalent,
    is_q_reduced,
    jacobian,
    laplacian_matrix,
    principal_generator,
    principal_of_set,
    pullback,
    q_reduce,
    restrict,
    spanning_tree_count,
)
from tropdiv.graph import InputError, Multigraph, banana, cycle, decompose_at_cut_vertex, rose, subdivide, wedge
from tropdiv.sampling import connected_multigraphs

from conftest import D, divisors, multigraphs

theta = banana(3)
C3 = cycle(3)


def translates(G, base, radius=2):
    """``base + sum f_v T_v`` for all small integer vectors ``f``."""
    T = [principal_generator(G, v) for v in G.vertices]
    for f in product(range(-radius, radius + 1), repeat=len(G.vertices)):
        out = base
        for k, Tv in zip(f, T):
            out = out + k * Tv
        yield out


def test_divisor_arithmetic():
    a = D(C3, v0=1, v1=-2)
    b = D(C3, v2=5)
    assert (a + b).coeffs == (1, -2, 5)
    assert (a - b).degree == -6
    assert (2 * a)["v1"] == -4
    assert -a == D(C3, v0=-1, v1=2)
    assert not a.is_effective() and b.is_effective()
    with pytest.raises(InputError):
        a + Divisor.zero(("x", "y", "z"))
    with pytest.raises(InputError):
        Divisor.from_dict(C3.vertices, {"nope": 1})


def test_principal_generator_examples():
    assert principal_generator(theta, "v0") == D(theta, v0=-3, v1=3)
    assert principal_generator(C3, "v0") == D(C3, v0=-2, v1=1, v2=1)
    assert principal_generator(rose(1), "v") == Divisor.zero(("v",))


def test_principal_of_set_examples():
    assert principal_of_set(C3, ["v1", "v2"]) == D(C3, v0=2, v1=-1, v2=-1)
    assert principal_of_set(C3, C3.vertices) == Divisor.zero(C3.vertices)
    assert principal_of_set(theta, ["v0"]) == principal_generator(theta, "v0")


def test_divisor_of_function_examples():
    assert divisor_of_function(C3, {"v0": 1, "v1": 0, "v2": 0}) == D(C3, v0=2, v1=-1, v2=-1)
    assert divisor_of_function(C3, {"v0": 1, "v1": 0, "v2": 0}) == -principal_generator(C3, "v0")
    assert divisor_of_function(theta, {"v0": 7, "v1": 7}) == Divisor.zero(theta.vertices)
    assert divisor_of_function(theta, {"v0": 1, "v1": 0}) == D(theta, v0=3, v1=-3)


def test_q_reduce_c3_oracle():
    start = D(C3, v1=2)
    reduced = {E for E in translates(C3, start) if is_q_reduced(C3, E, "v0")}
    assert reduced == {D(C3, v0=1, v2=1)}
    assert q_reduce(C3, start, "v0") == D(C3, v0=1, v2=1)


def test_q_reduce_simple_cases():
    assert q_reduce(C3, D(C3, v0=1), "v0") == D(C3, v0=1)
    R = q_reduce(theta, D(theta, v0=5, v1=-7))
    assert q_reduce(theta, R) == R


def test_q_reduce_rejects_disconnected():
    G = Multigraph(("a", "b"))
    with pytest.raises(InputError):
        q_reduce(G, Divisor.zero(G.vertices))


def test_equivalence_examples():
    assert not is_equivalent(C3, D(C3, v0=1), D(C3, v1=1))
    assert not is_equivalent(C3, D(C3, v0=1), D(C3, v1=1), method="snf")
    base = D(C3, v0=3, v2=-1)
    assert is_equivalent(C3, base, base + principal_of_set(C3, ["v0", "v2"]))
    assert is_equivalent(C3, base, base)


def test_effective_representative_examples():
    assert not has_effective_representative(C3, D(C3, v0=-1))
    assert has_effective_representative(C3, D(C3, v0=2))
    target = D(C3, v0=-1, v1=1, v2=1)
    assert any(E.is_effective() for E in translates(C3, target))
    assert has_effective_representative(C3, target)


def test_jacobian_examples():
    assert jacobian(C3).invariant_factors == (3,) and jacobian(C3).order == 3
    tree = Multigraph(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("b", "d")))
    assert jacobian(tree).invariant_factors == () and jacobian(tree).order == 1
    assert jacobian(theta).invariant_factors == (3,)
    assert str(jacobian(C3)) == "Z/3 (order 3)"


def test_jacobian_noncyclic():
    # K4 has Jacobian Z/4 x Z/4.
    vs = ("a", "b", "c", "d")
    K4 = Multigraph(vs, tuple((vs[i], vs[j]) for i in range(4) for j in range(i + 1, 4)))
    assert jacobian(K4).invariant_factors == (4, 4)
    assert spanning_tree_count(K4) == 16


def test_pullback_examples():
    H, vmap = subdivide(C3, 1)
    assert pullback(vmap, Divisor.zero(C3.vertices)) == Divisor.zero(H.vertices)
    E = D(C3, v0=2, v2=-5)
    assert pullback(vmap, E).degree == E.degree
    with pytest.raises(InputError):
        pullback(vmap, Divisor.zero(("x",)))


def test_pullback_of_generator_is_explicitly_principal():
    # Uniform 1-subdivision of C3 into C6; the image of T_u equals
    # 2 T_u + sum of T_w over the two new neighbours w of u.
    H, vmap = subdivide(C3, 1)
    lhs = pullback(vmap, principal_generator(C3, "v0"))
    nbrs = [w for a, b in H.edges for w in (a, b) if "v0" in (a, b) and w != "v0"]
    rhs = 2 * principal_generator(H, "v0")
    for w in nbrs:
        rhs = rhs + principal_generator(H, w)
    assert lhs == rhs
    assert is_equivalent(H, lhs, Divisor.zero(H.vertices))


# -- invariants ---------------------------------------------------------------


@given(multigraphs())
def test_generators_have_degree_zero(G):
    for v in G.vertices:
        assert principal_generator(G, v).degree == 0
    assert principal_of_set(G, G.vertices) == Divisor.zero(G.vertices)


@given(multigraphs(), st.data())
def test_divisor_of_function_is_principal(G, data):
    f = {v: data.draw(st.integers(-3, 3)) for v in G.vertices}
    P = divisor_of_function(G, f)
    zero = Divisor.zero(G.vertices)
    assert is_equivalent(G, P, zero)
    assert is_equivalent(G, P, zero, method="snf")
    for v in G.vertices:
        ind = {w: int(w == v) for w in G.vertices}
        assert principal_generator(G, v) == -divisor_of_function(G, ind)


@given(multigraphs(max_vertices=4, max_extra=3), st.data())
def test_q_reduce_is_reduced_idempotent_and_equivalent(G, data):
    E = data.draw(divisors(G.vertices, -4, 4))
    R = q_reduce(G, E)
    assert is_q_reduced(G, R)
    assert q_reduce(G, R) == R
    assert R.degree == E.degree
    assert is_equivalent(G, R, E, method="snf")


@given(multigraphs(max_vertices=4, max_extra=3), st.data())
def test_q_reduce_class_function(G, data):
    E = data.draw(divisors(G.vertices))
    f = [data.draw(st.integers(-3, 3)) for _ in G.vertices]
    E2 = E
    for k, v in zip(f, G.vertices):
        E2 = E2 + k * principal_generator(G, v)
    assert q_reduce(G, E) == q_reduce(G, E2)
    q = data.draw(st.sampled_from(G.vertices))
    assert q_reduce(G, E, q) == q_reduce(G, E2, q)


@given(multigraphs(), st.data())
def test_equivalence_ignores_loops(G, data):
    a = data.draw(divisors(G.vertices))
    b = data.draw(divisors(G.vertices))
    assert is_equivalent(G, a, b) == is_equivalent(G.without_loops(), a, b)


def test_equivalence_deciders_agree_on_small_graphs():
    rng = random.Random(11)
    for G in connected_multigraphs(4, 6):
        for _ in range(3):
            a = Divisor(G.vertices, (rng.randint(-3, 3) for _ in G.vertices))
            b = Divisor(G.vertices, (rng.randint(-3, 3) for _ in G.vertices))
            if rng.random() < 0.5:
                b = a + principal_generator(G, rng.choice(G.vertices)) * rng.randint(-2, 2)
            assert is_equivalent(G, a, b) == is_equivalent(G, a, b, method="snf")


def test_q_reduce_matches_snf_classes_exhaustively():
    # Every degree-0 divisor with tiny coefficients on every small graph.
    for G in connected_multigraphs(3, 4):
        seen = {}
        for cs in product(range(-1, 2), repeat=len(G.vertices)):
            if sum(cs):
                continue
            E = Divisor(G.vertices, cs)
            R = q_reduce(G, E)
            for other, R2 in seen.items():
                assert (R == R2) == is_equivalent(G, E, other, method="snf")
            seen[E] = R


@given(multigraphs(max_vertices=5, max_extra=3))
def test_jacobian_order_is_spanning_tree_count(G):
    assert jacobian(G).order == spanning_tree_count(G)


@given(multigraphs(max_vertices=3, max_extra=2, loops=False), multigraphs(max_vertices=3, max_extra=2, loops=False))
def test_jacobian_multiplies_over_wedge(H1, H2):
    ren = lambda G, p: Multigraph(
        tuple("c" if v == "v0" else p + v for v in G.vertices),
        tuple(tuple("c" if x == "v0" else p + x for x in e) for e in G.edges),
    )
    A, B = ren(H1, "a"), ren(H2, "b")
    G = wedge(A, B, "c")
    assert jacobian(G).order == jacobian(A).order * jacobian(B).order


def test_laplacian_rows_are_generators():
    M = laplacian_matrix(theta)
    assert M == [[-3, 3], [3, -3]]


def test_restrict():
    t1 = Multigraph(("v", "a"), (("v", "a"),))
    t2 = Multigraph(("v", "b"), (("v", "b"),))
    G = wedge(t1, t2, "v")
    E = D(G, v=1, a=2, b=3)
    assert restrict(E, t1) == D(t1, v=1, a=2)
    assert decompose_at_cut_vertex(G, "v") == [t1, t2]
