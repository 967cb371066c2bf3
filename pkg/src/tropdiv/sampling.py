"""Graph enumeration and seeded random instances for sweeps and tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Iterator

from .divisor import Divisor
from .graph import Multigraph, WeightedGraph, wedge, weighted_genus
from .rank import canonical
from .tropical import TropicalCurve, TropicalDivisor


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


def _canonical_form(n: int, edges: tuple[tuple[int, int], ...], weights: tuple[int, ...] = ()):
    best = None
    for perm in permutations(range(n)):
        e = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        w = tuple(weights[perm.index(i)] for i in range(n)) if weights else ()
        key = (e, w)
        if best is None or key < best:
            best = key
    return best


def _connected(n: int, edges) -> bool:
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == i and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == n


def connected_multigraphs(max_vertices: int, max_edges: int, loops: bool = True) -> Iterator[Multigraph]:
    """Connected multigraphs up to isomorphism, vertices named ``v0, v1, ...``."""
    for n in range(1, max_vertices + 1):
        pairs = [(a, b) for a in range(n) for b in range(a, n) if loops or a != b]
        seen = set()
        for m in range(n - 1, max_edges + 1):
            for edges in combinations_with_replacement(pairs, m):
                if not _connected(n, edges):
                    continue
                key = _canonical_form(n, edges)
                if key in seen:
                    continue
                seen.add(key)
                names = _names(n)
                yield Multigraph(names, tuple((names[a], names[b]) for a, b in key[0]))


def weight_assignments(G: Multigraph, max_total: int) -> Iterator[WeightedGraph]:
    """Weightings with total at most ``max_total``, up to automorphisms of ``G``."""
    n = len(G.vertices)
    idx = G.index
    edges = tuple((idx[u], idx[v]) for u, v in G.edges)
    seen = set()
    for w in product(range(max_total + 1), repeat=n):
        if sum(w) > max_total:
            continue
        key = _canonical_form(n, edges, w)
        if key in seen:
            continue
        seen.add(key)
        yield WeightedGraph(G, dict(zip(G.vertices, w)))


def sweep_divisors(GW: WeightedGraph, count: int, rng: random.Random) -> list[Divisor]:
    """``count`` distinct divisors with coefficients in ``[-2, 2g + 1]``.

    Always includes ``0`` and the canonical divisor; returns every such
    divisor when fewer than ``count`` exist.
    """
    vs = GW.vertices
    g = weighted_genus(GW)
    lo, hi = -2, 2 * g + 1
    total = (hi - lo + 1) ** len(vs)
    zero = Divisor.zero(vs)
    K = canonical(GW)
    if total <= count:
        return [Divisor(vs, c) for c in product(range(lo, hi + 1), repeat=len(vs))]
    out = {zero: None}
    if all(lo <= x <= hi for x in K.coeffs):
        out[K] = None
    while len(out) < count:
        out[Divisor(vs, (rng.randint(lo, hi) for _ in vs))] = None
    return list(out)


def random_connected_graph(
    rng: random.Random, n: int, extra_edges: int, loops: bool = False, prefix: str = "v"
) -> Multigraph:
    """Random spanning tree plus ``extra_edges`` random (possibly parallel) edges."""
    names = tuple(f"{prefix}{i}" for i in range(n))
    edges = []
    for i in range(1, n):
        edges.append((names[rng.randrange(i)], names[i]))
    for _ in range(extra_edges):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b and not loops:
            if n == 1:
                continue
            b = (a + 1 + rng.randrange(n - 1)) % n
        edges.append((names[a], names[b]))
    return Multigraph(names, tuple(edges))


def random_divisor(rng: random.Random, vertices, lo: int, hi: int) -> Divisor:
    return Divisor(vertices, (rng.randint(lo, hi) for _ in vertices))


def random_wedge(rng: random.Random, max_vertices: int = 3, max_extra: int = 2, loops: bool = False):
    """``(G, H1, H2, v)`` with ``G = H1 v H2`` glued at ``v``."""
    n1 = rng.randint(1, max_vertices)
    n2 = rng.randint(1, max_vertices)
    H1 = random_connected_graph(rng, n1, rng.randint(0, max_extra), loops, prefix="a")
    H2 = random_connected_graph(rng, n2, rng.randint(0, max_extra), loops, prefix="b")
    # Identify a random vertex of each side with "c".
    c1, c2 = rng.choice(H1.vertices), rng.choice(H2.vertices)
    H1 = _rename(H1, c1, "c")
    H2 = _rename(H2, c2, "c")
    return wedge(H1, H2, "c"), H1, H2, "c"


def _rename(G: Multigraph, old: str, new: str) -> Multigraph:
    f = lambda x: new if x == old else x
    return Multigraph(tuple(f(v) for v in G.vertices), tuple((f(a), f(b)) for a, b in G.edges))


def random_tropical_curve(
    rng: random.Random, max_vertices: int = 3, max_weight: int = 2, max_denominator: int = 4, max_edges: int = 3
) -> TropicalCurve:
    n = rng.randint(1, max_vertices)
    m = rng.randint(max(n - 1, 0), max(max_edges, n - 1))
    G = random_connected_graph(rng, n, m - (n - 1), loops=True)
    total = rng.randint(0, max_weight)
    weight = dict.fromkeys(G.vertices, 0)
    for _ in range(total):
        weight[rng.choice(G.vertices)] += 1
    lengths = tuple(
        Fraction(rng.randint(1, max_denominator), rng.randint(1, max_denominator)) for _ in G.edges
    )
    return TropicalCurve(WeightedGraph(G, weight), lengths)


def random_tropical_divisor(
    rng: random.Random, curve: TropicalCurve, n_terms: int, lo: int = -1, hi: int = 2, max_denominator: int = 4
) -> TropicalDivisor:
    """Random integer combination of vertices and rational interior edge points."""
    terms = []
    for _ in range(n_terms):
        if curve.graph.edges and rng.random() < 0.5:
            i = rng.randrange(len(curve.graph.edges))
            L = curve.length[i]
            q = rng.randint(1, max_denominator)
            # interior rational point with denominator q (scaled into the edge)
            t = L * Fraction(rng.randint(1, q), q + 1)
            terms.append(((i, t), rng.randint(lo, hi)))
        else:
            terms.append((rng.choice(curve.graph.vertices), rng.randint(lo, hi)))
    return TropicalDivisor(terms)
