"""Divisors on a multigraph: arithmetic, principal divisors, linear
equivalence, q-reduced forms and the Jacobian group.

Loop-edges never affect linear equivalence, so every chip-firing routine here
works on the loopless adjacency of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .graph import InputError, Multigraph, VertexMap, intersection_product
from .linalg import bareiss_determinant, in_integer_image, smith_normal_form


class Divisor:
    """Integer combination of the vertices of a fixed vertex tuple."""

    __slots__ = ("vertices", "coeffs", "_hash")

    def __init__(self, vertices: Iterable[str], coeffs: Iterable[int]):
        self.vertices = tuple(vertices)
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.vertices) != len(self.coeffs):
            raise InputError("divisor needs one coefficient per vertex")
        self._hash = hash((self.vertices, self.coeffs))

    @classmethod
    def from_dict(cls, vertices: Iterable[str], values: Mapping[str, int]) -> "Divisor":
        vertices = tuple(vertices)
        unknown = set(values) - set(vertices)
        if unknown:
            raise InputError(f"divisor uses unknown vertices {sorted(unknown)}")
        return cls(vertices, (values.get(v, 0) for v in vertices))

    @classmethod
    def zero(cls, vertices: Iterable[str]) -> "Divisor":
        vertices = tuple(vertices)
        return cls(vertices, (0,) * len(vertices))

    @classmethod
    def point(cls, vertices: Iterable[str], v: str, coeff: int = 1) -> "Divisor":
        return cls.from_dict(vertices, {v: coeff})

    def __getitem__(self, v: str) -> int:
        try:
            return self.coeffs[self.vertices.index(v)]
        except ValueError:
            raise InputError(f"unknown vertex {v!r}") from None

    def _check(self, other: "Divisor"):
        if not isinstance(other, Divisor):
            return NotImplemented
        if other.vertices != self.vertices:
            raise InputError("divisors live on different vertex sets")
        return other

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.vertices, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.vertices, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Divisor":
        return Divisor(self.vertices, (-a for a in self.coeffs))

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.vertices, (k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.vertices == other.vertices and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Divisor({format_divisor(self)})"

    @property
    def degree(self) -> int:
        return sum(self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def support(self) -> tuple[str, ...]:
        return tuple(v for v, c in zip(self.vertices, self.coeffs) if c)

    def as_dict(self) -> dict[str, int]:
        return {v: c for v, c in zip(self.vertices, self.coeffs) if c}


def format_divisor(D: Divisor) -> str:
    """``v0:1,v1:-2`` style text, zero coefficients omitted; ``0`` for the zero divisor."""
    parts = [f"{v}:{c}" for v, c in zip(D.vertices, D.coeffs) if c]
    return ",".join(parts) if parts else "0"


def _on(G: Multigraph, D: Divisor) -> Divisor:
    if D.vertices != G.vertices:
        raise InputError("divisor is not defined over this graph's vertices")
    return D


@dataclass(frozen=True)
class JacobianStructure:
    invariant_factors: tuple[int, ...]
    order: int

    def __str__(self):
        if not self.invariant_factors:
            return f"0 (order {self.order})"
        group = " x ".join(f"Z/{d}" for d in self.invariant_factors)
        return f"{group} (order {self.order})"


def principal_generator(G: Multigraph, v: str) -> Divisor:
    G.check_vertex(v)
    return Divisor(G.vertices, (intersection_product(G, v, w) for w in G.vertices))


def principal_of_set(G: Multigraph, Z: Iterable[str]) -> Divisor:
    total = Divisor.zero(G.vertices)
    for v in set(Z):
        total = total + principal_generator(G, v)
    return total


def divisor_of_function(G: Multigraph, f: Mapping[str, int]) -> Divisor:
    """``sum_v sum_{e = vw} (f(v) - f(w)) v``; loops contribute nothing."""
    missing = [v for v in G.vertices if v not in f]
    if missing:
        raise InputError(f"function undefined at {missing}")
    out = dict.fromkeys(G.vertices, 0)
    for u, w in G.edges:
        out[u] += f[u] - f[w]
        out[w] += f[w] - f[u]
    return Divisor.from_dict(G.vertices, out)


def laplacian_matrix(G: Multigraph) -> list[list[int]]:
    """Matrix of the intersection product; row ``v`` is ``T_v``."""
    n = len(G.vertices)
    M = [[0] * n for _ in range(n)]
    for i, nbrs in enumerate(G.adjacency):
        for j, m in nbrs:
            M[i][j] = m
            M[i][i] -= m
    return M


# -- q-reduction -------------------------------------------------------------


def _reduce_vector(G: Multigraph, c: list[int], qi: int) -> list[int]:
    """q-reduce the coefficient vector ``c`` (modified in place and returned)."""
    adj = G.adjacency
    n = len(c)
    dist = G.distances_from(G.vertices[qi])
    if min(dist) < 0:
        G.require_connected()

    # Phase 1: working outward-in, fire the ball of radius k-1 around q just
    # enough times that layer k is nonnegative. Each firing only touches
    # layers k-1 and k, so deeper layers stay fixed.
    depth = max(dist)
    layers: list[list[int]] = [[] for _ in range(depth + 1)]
    for i, d in enumerate(dist):
        layers[d].append(i)
    for k in range(depth, 0, -1):
        need = 0
        inward = {}
        for i in layers[k]:
            m = sum(mult for j, mult in adj[i] if dist[j] == k - 1)
            inward[i] = m
            if c[i] < 0:
                need = max(need, -(c[i] // m))
        if need:
            for i in layers[k]:
                c[i] += need * inward[i]
            for i in layers[k - 1]:
                c[i] -= need * sum(mult for j, mult in adj[i] if dist[j] == k)

    # Phase 2: Dhar's burning algorithm. Whatever survives the fire started at
    # q can be fired legally; fire it as many times as stays legal and repeat.
    while True:
        burnt = [False] * n
        burnt[qi] = True
        heat = [0] * n
        stack = [qi]
        while stack:
            i = stack.pop()
            for j, m in adj[i]:
                if not burnt[j]:
                    heat[j] += m
                    if heat[j] > c[j]:
                        burnt[j] = True
                        stack.append(j)
        if all(burnt):
            return c
        times = None
        for i in range(n):
            if not burnt[i] and heat[i]:
                t = c[i] // heat[i]
                times = t if times is None else min(times, t)
        for i in range(n):
            if burnt[i]:
                continue
            for j, m in adj[i]:
                if burnt[j]:
                    c[i] -= times * m
                    c[j] += times * m


def q_reduce(G: Multigraph, D: Divisor, q: str | None = None) -> Divisor:
    """The unique q-reduced divisor linearly equivalent to ``D``.

    ``q`` defaults to the first vertex of ``G``.
    """
    G.require_connected()
    _on(G, D)
    qi = 0 if q is None else G.index[G.check_vertex(q)]
    return Divisor(G.vertices, _reduce_vector(G, list(D.coeffs), qi))


def is_q_reduced(G: Multigraph, D: Divisor, q: str | None = None) -> bool:
    """Direct check of the definition: nonnegative off ``q`` and no nonempty
    set avoiding ``q`` can fire. Exponential in ``|V|``; meant for tests."""
    from itertools import combinations

    _on(G, D)
    qi = 0 if q is None else G.index[G.check_vertex(q)]
    others = [i for i in range(len(G.vertices)) if i != qi]
    if any(D.coeffs[i] < 0 for i in others):
        return False
    adj = G.adjacency
    for size in range(1, len(others) + 1):
        for S in combinations(others, size):
            inside = set(S)
            if all(D.coeffs[i] >= sum(m for j, m in adj[i] if j not in inside) for i in S):
                return False
    return True


def is_equivalent(G: Multigraph, D: Divisor, D2: Divisor, method: str = "reduce") -> bool:
    """Linear equivalence. ``method`` is ``"reduce"`` (compare q-reduced forms)
    or ``"snf"`` (lattice membership of ``D - D2`` via Smith normal form)."""
    G.require_connected()
    _on(G, D)
    _on(G, D2)
    if method == "reduce":
        if D.degree != D2.degree:
            return False
        return q_reduce(G, D) == q_reduce(G, D2)
    if method == "snf":
        return in_integer_image(_laplacian_snf(G), (D - D2).coeffs)
    raise ValueError(f"unknown equivalence method {method!r}")


@lru_cache(maxsize=256)
def _laplacian_snf(G: Multigraph):
    return smith_normal_form(laplacian_matrix(G))


def has_effective_representative(G: Multigraph, D: Divisor) -> bool:
    if D.degree < 0:
        return False
    return q_reduce(G, D).coeffs[0] >= 0


def reduced_laplacian(G: Multigraph) -> list[list[int]]:
    """Laplacian with the row and column of the lexicographically first vertex removed."""
    M = laplacian_matrix(G)
    drop = G.index[min(G.vertices)]
    return [[-x for j, x in enumerate(row) if j != drop] for i, row in enumerate(M) if i != drop]


def spanning_tree_count(G: Multigraph) -> int:
    """Matrix-tree theorem: determinant of the reduced Laplacian."""
    G.require_connected()
    return bareiss_determinant(reduced_laplacian(G))


def jacobian(G: Multigraph) -> JacobianStructure:
    G.require_connected()
    diag, _, _ = smith_normal_form(reduced_laplacian(G))
    factors = tuple(abs(d) for d in diag if abs(d) != 1)
    order = 1
    for d in factors:
        order *= d
    if 0 in factors or order != spanning_tree_count(G):
        raise RuntimeError("Smith normal form disagrees with the matrix-tree count")
    return JacobianStructure(factors, order)


def pullback(vmap: VertexMap, D: Divisor) -> Divisor:
    """Copy coefficients onto the image vertices; new vertices get 0."""
    if D.vertices != vmap.source.vertices:
        raise InputError("divisor is not defined over the map's source vertices")
    values = {vmap(v): c for v, c in zip(D.vertices, D.coeffs)}
    return Divisor.from_dict(vmap.target.vertices, values)


def restrict(D: Divisor, H: Multigraph) -> Divisor:
    """Coefficients of ``D`` on the vertices of the subgraph ``H``."""
    return Divisor(H.vertices, (D[v] for v in H.vertices))
