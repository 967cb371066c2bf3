"""Finite multigraphs with loops, vertex weights, and the derived graphs
used throughout the divisor theory (hat graph, virtual graph, subdivisions,
cut-vertex branches).

Graphs are immutable. Every construction returns a new graph together with a
:class:`VertexMap` recording how the old vertex set sits inside the new one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Edge = tuple[str, str]


class InputError(ValueError):
    """Malformed or out-of-contract input (unknown vertex, bad weight, ...)."""


class DisconnectedGraphError(InputError):
    def __init__(self, components: Sequence[Sequence[str]]):
        self.components = [list(c) for c in components]
        parts = "; ".join("{" + ", ".join(c) + "}" for c in self.components)
        super().__init__(f"graph is disconnected; components: {parts}")


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph. Edge ``i`` is ``edges[i]``; ``(v, v)`` is a loop."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple((str(u), str(v)) for u, v in self.edges))
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise InputError(f"duplicate vertex {v!r}")
            seen.add(v)
        for i, (u, v) in enumerate(self.edges):
            for x in (u, v):
                if x not in seen:
                    raise InputError(f"edge {i} ({u}, {v}) uses undeclared vertex {x!r}")

    def __repr__(self):
        return f"Multigraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def check_vertex(self, v: str) -> str:
        if v not in self.index:
            raise InputError(f"unknown vertex {v!r}")
        return v

    @cached_property
    def _valence(self) -> dict[str, int]:
        val = Counter({v: 0 for v in self.vertices})
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return dict(val)

    @cached_property
    def _loops(self) -> dict[str, int]:
        loops = Counter({v: 0 for v in self.vertices})
        for u, v in self.edges:
            if u == v:
                loops[u] += 1
        return dict(loops)

    def valence(self, v: str) -> int:
        """Number of edge ends at ``v``; a loop contributes 2."""
        return self._valence[self.check_vertex(v)]

    def loops(self, v: str) -> int:
        return self._loops[self.check_vertex(v)]

    def is_loop(self, i: int) -> bool:
        u, v = self.edges[i]
        return u == v

    @cached_property
    def loop_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.edges)) if self.is_loop(i))

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex index, the ``(neighbour index, multiplicity)`` pairs; loops dropped."""
        mult: list[Counter] = [Counter() for _ in self.vertices]
        for u, v in self.edges:
            if u != v:
                i, j = self.index[u], self.index[v]
                mult[i][j] += 1
                mult[j][i] += 1
        return tuple(tuple(sorted(m.items())) for m in mult)

    def components(self) -> list[list[str]]:
        seen: set[int] = set()
        comps = []
        for start in range(len(self.vertices)):
            if start in seen:
                continue
            seen.add(start)
            stack, comp = [start], []
            while stack:
                i = stack.pop()
                comp.append(i)
                for j, _ in self.adjacency[i]:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
            comps.append([self.vertices[i] for i in sorted(comp)])
        return comps

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.components()) == 1

    def require_connected(self) -> "Multigraph":
        if not self.vertices:
            raise InputError("graph has no vertices")
        comps = self.components()
        if len(comps) > 1:
            raise DisconnectedGraphError(comps)
        return self

    def without_loops(self) -> "Multigraph":
        return Multigraph(self.vertices, tuple(e for e in self.edges if e[0] != e[1]))

    def distances_from(self, q: str) -> list[int]:
        """BFS distances (by vertex index) from ``q``; ``-1`` when unreachable."""
        dist = [-1] * len(self.vertices)
        dist[self.index[q]] = 0
        frontier = [self.index[q]]
        while frontier:
            nxt = []
            for i in frontier:
                for j, _ in self.adjacency[i]:
                    if dist[j] < 0:
                        dist[j] = dist[i] + 1
                        nxt.append(j)
            frontier = nxt
        return dist


@dataclass(frozen=True)
class WeightedGraph:
    graph: Multigraph
    weight: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        w = dict(self.weight)
        for v in w:
            if v not in self.graph.index:
                raise InputError(f"weight given for unknown vertex {v!r}")
        for v, x in w.items():
            if int(x) != x or x < 0:
                raise InputError(f"weight of {v!r} must be a nonnegative integer, got {x!r}")
        full = tuple((v, int(w.get(v, 0))) for v in self.graph.vertices)
        object.__setattr__(self, "weight", _FrozenDict(full))

    @classmethod
    def unweighted(cls, graph: Multigraph) -> "WeightedGraph":
        return cls(graph, {})

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def total_weight(self) -> int:
        return sum(self.weight.values())


class _FrozenDict(dict):
    """Hashable read-only dict keyed in insertion order."""

    def __init__(self, items):
        super().__init__(items)
        self._hash = hash(tuple(self.items()))

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (type(self), (tuple(self.items()),))

    def _readonly(self, *args, **kwargs):
        raise TypeError("weights are immutable")

    __setitem__ = __delitem__ = clear = pop = popitem = setdefault = update = _readonly


@dataclass(frozen=True)
class VertexMap:
    """Injection ``V(source) -> V(target)``."""

    source: Multigraph
    target: Multigraph
    mapping: Mapping[str, str]

    def __post_init__(self):
        m = dict(self.mapping)
        if set(m) != set(self.source.vertices):
            raise InputError("vertex map must be defined on exactly the source vertices")
        if len(set(m.values())) != len(m):
            raise InputError("vertex map is not injective")
        for w in m.values():
            if w not in self.target.index:
                raise InputError(f"vertex map image {w!r} is not a target vertex")
        object.__setattr__(self, "mapping", _FrozenDict((v, m[v]) for v in self.source.vertices))

    def __call__(self, v: str) -> str:
        try:
            return self.mapping[v]
        except KeyError:
            raise InputError(f"vertex {v!r} outside the map's domain") from None

    @classmethod
    def inclusion(cls, source: Multigraph, target: Multigraph) -> "VertexMap":
        return cls(source, target, {v: v for v in source.vertices})

    def then(self, other: "VertexMap") -> "VertexMap":
        if other.source != self.target:
            raise InputError("cannot compose vertex maps: target/source mismatch")
        return VertexMap(self.source, other.target, {v: other(w) for v, w in self.mapping.items()})

    @property
    def new_vertices(self) -> tuple[str, ...]:
        image = set(self.mapping.values())
        return tuple(v for v in self.target.vertices if v not in image)


def intersection_product(G: Multigraph, v: str, w: str) -> int:
    G.check_vertex(v)
    G.check_vertex(w)
    if v == w:
        return -G.valence(v) + 2 * G.loops(v)
    return sum(1 for a, b in G.edges if {a, b} == {v, w})


def genus(G: Multigraph) -> int:
    """First Betti number ``|E| - |V| + 1`` of a connected graph."""
    G.require_connected()
    return len(G.edges) - len(G.vertices) + 1


def weighted_genus(GW: WeightedGraph) -> int:
    return genus(GW.graph) + GW.total_weight


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def virtual_graph(GW: WeightedGraph) -> tuple[Multigraph, VertexMap]:
    """Attach ``weight(v)`` loops at every vertex ``v``.

    Original edges keep their indices; the virtual loops are appended in
    vertex order.
    """
    G = GW.graph
    extra = [(v, v) for v in G.vertices for _ in range(GW.weight[v])]
    H = Multigraph(G.vertices, G.edges + tuple(extra))
    return H, VertexMap.inclusion(G, H)


def subdivide(G: Multigraph, counts: int | Mapping[int, int] | Sequence[int]) -> tuple[Multigraph, VertexMap]:
    """Replace edge ``i`` by a path through ``counts[i]`` new interior vertices.

    ``counts`` may be a single integer (uniform subdivision), a sequence
    indexed by edge, or a mapping edge index -> count (missing edges get 0).
    New vertices are named ``e{i}#sub{k}`` for ``k = 1..counts[i]``, ordered
    from the edge's first endpoint to its second. Edge order follows the
    original edges, each expanded in place.
    """
    n_edges = len(G.edges)
    if isinstance(counts, int):
        per_edge = [counts] * n_edges
    elif isinstance(counts, Mapping):
        for i in counts:
            if not 0 <= i < n_edges:
                raise InputError(f"no edge with index {i}")
        per_edge = [int(counts.get(i, 0)) for i in range(n_edges)]
    else:
        per_edge = [int(c) for c in counts]
        if len(per_edge) != n_edges:
            raise InputError(f"expected {n_edges} subdivision counts, got {len(per_edge)}")
    if any(c < 0 for c in per_edge):
        raise InputError("subdivision counts must be nonnegative")

    taken = set(G.vertices)
    vertices = list(G.vertices)
    edges: list[Edge] = []
    for i, ((u, v), c) in enumerate(zip(G.edges, per_edge)):
        path = [u]
        for k in range(1, c + 1):
            w = _fresh(f"e{i}#sub{k}", taken)
            vertices.append(w)
            path.append(w)
        path.append(v)
        edges.extend(zip(path, path[1:]))
    H = Multigraph(tuple(vertices), tuple(edges))
    return H, VertexMap.inclusion(G, H)


def hat(G: Multigraph) -> tuple[Multigraph, VertexMap]:
    """Insert one vertex in the interior of every loop-edge.

    Loop number ``j`` (0-based, among loops at ``v``) gets the midpoint
    ``v#loop{j}#mid``.
    """
    taken = set(G.vertices)
    vertices = list(G.vertices)
    edges: list[Edge] = []
    seen_loops: Counter = Counter()
    for u, v in G.edges:
        if u != v:
            edges.append((u, v))
            continue
        mid = _fresh(f"{v}#loop{seen_loops[v]}#mid", taken)
        seen_loops[v] += 1
        vertices.append(mid)
        edges.extend([(v, mid), (mid, v)])
    H = Multigraph(tuple(vertices), tuple(edges))
    return H, VertexMap.inclusion(G, H)


def decompose_at_cut_vertex(G: Multigraph, v: str) -> list[Multigraph]:
    """Split ``G`` into its branches at ``v``.

    Every branch is a connected subgraph containing ``v``; distinct branches
    share only ``v`` and partition the edges. Each loop at ``v`` is its own
    branch. Returns ``[]`` when ``v`` is not a cut vertex (fewer than two
    branches). Vertex and edge order within a branch follow ``G``.
    """
    G.require_connected()
    G.check_vertex(v)
    # Union-find over the other vertices using edges that avoid v.
    parent = {u: u for u in G.vertices if u != v}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in G.edges:
        if v not in (a, b):
            parent[find(a)] = find(b)

    groups: dict[object, list[int]] = {}
    for i, (a, b) in enumerate(G.edges):
        if a == b == v:
            key: object = ("loop", i)
        else:
            key = find(b if a == v else a)
        groups.setdefault(key, []).append(i)
    if len(groups) < 2:
        return []

    branches = []
    for idx in sorted(groups.values()):
        used = {v}
        for i in idx:
            used.update(G.edges[i])
        verts = tuple(u for u in G.vertices if u in used)
        branches.append(Multigraph(verts, tuple(G.edges[i] for i in idx)))
    return branches


def wedge(H1: Multigraph, H2: Multigraph, v: str) -> Multigraph:
    """Glue two graphs at their common vertex ``v``; all other vertices must differ."""
    H1.check_vertex(v)
    H2.check_vertex(v)
    common = set(H1.vertices) & set(H2.vertices)
    if common != {v}:
        raise InputError(f"wedge summands must share exactly {v!r}, share {sorted(common)}")
    verts = H1.vertices + tuple(u for u in H2.vertices if u != v)
    return Multigraph(verts, H1.edges + H2.edges)


def rose(g: int, name: str = "v") -> Multigraph:
    return Multigraph((name,), tuple((name, name) for _ in range(g)))


def cycle(n: int, prefix: str = "v") -> Multigraph:
    """``C_n``: ``C_1`` is a single loop, ``C_2`` two parallel edges."""
    vs = tuple(f"{prefix}{i}" for i in range(n))
    return Multigraph(vs, tuple((vs[i], vs[(i + 1) % n]) for i in range(n)))


def banana(k: int, names: Iterable[str] = ("v0", "v1")) -> Multigraph:
    """Two vertices joined by ``k`` parallel edges (``k = 3`` is the theta graph)."""
    a, b = names
    return Multigraph((a, b), tuple((a, b) for _ in range(k)))
