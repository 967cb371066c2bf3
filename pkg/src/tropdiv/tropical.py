"""Weighted tropical curves with rational edge lengths, pseudo-metric graphs,
epsilon-models, and tropical rank through a finite unit-edge model.

Edge points are written ``(edge index, t)`` with ``t`` measured from the
edge's first endpoint, ``0 < t < length``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

from .divisor import Divisor
from .graph import InputError, Multigraph, VertexMap, WeightedGraph, virtual_graph, weighted_genus
from .rank import RiemannRochReport, rank_plain

Location = Union[str, tuple[int, Fraction]]

DEFAULT_BUDGET = 10_000


class ModelTooLargeError(InputError):
    def __init__(self, size: int, budget: int):
        self.size, self.budget = size, budget
        super().__init__(f"discretized model needs {size} vertices, budget is {budget}")


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("lengths and positions must be exact rationals, not floats")
    return Fraction(x)


def _lengths(graph: Multigraph, length) -> tuple[Fraction, ...]:
    if isinstance(length, Mapping):
        missing = [i for i in range(len(graph.edges)) if i not in length]
        if missing:
            raise InputError(f"no length for edges {missing}")
        vals = [length[i] for i in range(len(graph.edges))]
    else:
        vals = list(length)
        if len(vals) != len(graph.edges):
            raise InputError(f"expected {len(graph.edges)} edge lengths, got {len(vals)}")
    return tuple(_as_fraction(x) for x in vals)


@dataclass(frozen=True)
class TropicalCurve:
    base: WeightedGraph
    length: tuple[Fraction, ...]

    def __post_init__(self):
        self.base.graph.require_connected()
        ls = _lengths(self.base.graph, self.length)
        for i, x in enumerate(ls):
            if x <= 0:
                raise InputError(f"edge {i} has length {x}; tropical curve lengths must be positive")
        object.__setattr__(self, "length", ls)

    @property
    def graph(self) -> Multigraph:
        return self.base.graph

    @property
    def genus(self) -> int:
        return weighted_genus(self.base)

    @property
    def is_pure(self) -> bool:
        return self.base.total_weight == 0


@dataclass(frozen=True)
class PseudoMetricGraph:
    graph: Multigraph
    length: tuple[Fraction, ...]

    def __post_init__(self):
        self.graph.require_connected()
        ls = _lengths(self.graph, self.length)
        for i, x in enumerate(ls):
            if x < 0:
                raise InputError(f"edge {i} has negative length {x}")
            if x == 0 and not self.graph.is_loop(i):
                raise InputError(f"edge {i} is not a loop but has length 0")
        object.__setattr__(self, "length", ls)


class TropicalDivisor:
    """Finite integer combination of points of a tropical curve."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Location, int]] = ()):
        acc: dict[Location, int] = {}
        for loc, coeff in terms:
            loc = _normalize_location(loc)
            acc[loc] = acc.get(loc, 0) + int(coeff)
        self.terms = tuple(sorted(((k, c) for k, c in acc.items() if c), key=lambda kv: _loc_key(kv[0])))

    @classmethod
    def from_divisor(cls, D: Divisor) -> "TropicalDivisor":
        return cls(zip(D.vertices, D.coeffs))

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.terms)

    def __add__(self, other: "TropicalDivisor") -> "TropicalDivisor":
        return TropicalDivisor(self.terms + other.terms)

    def __neg__(self) -> "TropicalDivisor":
        return TropicalDivisor((loc, -c) for loc, c in self.terms)

    def __sub__(self, other: "TropicalDivisor") -> "TropicalDivisor":
        return self + (-other)

    def __mul__(self, k: int) -> "TropicalDivisor":
        return TropicalDivisor((loc, k * c) for loc, c in self.terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TropicalDivisor) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"TropicalDivisor({format_tropical_divisor(self)})"

    def scaled(self, factor) -> "TropicalDivisor":
        """Positions multiplied by ``factor`` (pair with :func:`scale_curve`)."""
        f = _as_fraction(factor)
        return TropicalDivisor(
            (loc if isinstance(loc, str) else (loc[0], loc[1] * f), c) for loc, c in self.terms
        )

    def check_on(self, curve: TropicalCurve) -> None:
        for loc, _ in self.terms:
            if isinstance(loc, str):
                curve.graph.check_vertex(loc)
                continue
            i, t = loc
            if not 0 <= i < len(curve.graph.edges):
                raise InputError(f"no edge with index {i}")
            if not 0 < t < curve.length[i]:
                raise InputError(f"position {t} is not interior to edge {i} of length {curve.length[i]}")


def _normalize_location(loc) -> Location:
    if isinstance(loc, str):
        return loc
    i, t = loc
    return (int(i), _as_fraction(t))


def _loc_key(loc: Location):
    return (0, loc, 0) if isinstance(loc, str) else (1, loc[0], loc[1])


def format_tropical_divisor(D: TropicalDivisor) -> str:
    parts = []
    for loc, c in D.terms:
        where = loc if isinstance(loc, str) else f"{loc[0]}@{loc[1]}"
        parts.append(f"{where}:{c}")
    return ",".join(parts) if parts else "0"


def to_pseudo_metric(curve: TropicalCurve) -> PseudoMetricGraph:
    """Pseudo-metric graph of the curve: virtual loops of length 0."""
    Gw, _ = virtual_graph(curve.base)
    extra = len(Gw.edges) - len(curve.graph.edges)
    return PseudoMetricGraph(Gw, curve.length + (Fraction(0),) * extra)


def from_pseudo_metric(P: PseudoMetricGraph) -> TropicalCurve:
    """Inverse of :func:`to_pseudo_metric`: 0-length loops become vertex weight."""
    keep = [i for i, x in enumerate(P.length) if x != 0]
    weight = dict.fromkeys(P.graph.vertices, 0)
    for i, x in enumerate(P.length):
        if x == 0:
            weight[P.graph.edges[i][0]] += 1
    G = Multigraph(P.graph.vertices, tuple(P.graph.edges[i] for i in keep))
    return TropicalCurve(WeightedGraph(G, weight), tuple(P.length[i] for i in keep))


def epsilon_model(curve: TropicalCurve, epsilon=1) -> tuple[TropicalCurve, VertexMap]:
    """Pure curve on the virtual graph with every virtual loop of length ``epsilon``.

    ``epsilon`` is a positive rational, or a sequence giving one length per
    virtual loop (in the order the loops are appended).
    """
    Gw, vmap = virtual_graph(curve.base)
    n_virtual = len(Gw.edges) - len(curve.graph.edges)
    if isinstance(epsilon, (list, tuple)):
        eps = [_as_fraction(e) for e in epsilon]
        if len(eps) != n_virtual:
            raise InputError(f"expected {n_virtual} loop lengths, got {len(eps)}")
    else:
        eps = [_as_fraction(epsilon)] * n_virtual
    if any(e <= 0 for e in eps):
        raise InputError("epsilon must be positive")
    model = TropicalCurve(WeightedGraph.unweighted(Gw), curve.length + tuple(eps))
    return model, vmap


def scale_curve(curve: TropicalCurve, factor) -> TropicalCurve:
    f = _as_fraction(factor)
    if f <= 0:
        raise InputError("scale factor must be positive")
    return TropicalCurve(curve.base, tuple(x * f for x in curve.length))


def tropical_canonical(curve: TropicalCurve) -> TropicalDivisor:
    G, w = curve.graph, curve.base.weight
    return TropicalDivisor((v, G.valence(v) + 2 * w[v] - 2) for v in G.vertices)


@dataclass(frozen=True)
class FiniteModel:
    """Unit-edge discretization of a pure curve carrying a divisor."""

    graph: Multigraph
    divisor: Divisor
    rank_determining: tuple[str, ...]
    scale: int


def discretize(
    curve: TropicalCurve,
    D: TropicalDivisor,
    *,
    granularity: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> FiniteModel:
    """Finite graph model of a pure curve with ``D`` supported on its vertices.

    Every support point and one interior point of every loop are made model
    vertices. Lengths are then scaled by ``granularity`` times the least
    common denominator, and each segment becomes a path of unit edges.
    """
    if not curve.is_pure:
        raise InputError("discretize expects a pure curve; build the epsilon model first")
    if granularity < 1:
        raise InputError("granularity must be a positive integer")
    D.check_on(curve)
    G = curve.graph
    cuts: dict[int, set[Fraction]] = {i: set() for i in range(len(G.edges))}
    for loc, _ in D.terms:
        if not isinstance(loc, str):
            cuts[loc[0]].add(loc[1])
    for i in G.loop_indices:
        if not cuts[i]:
            cuts[i].add(curve.length[i] / 2)

    segments: list[tuple[str, str, Fraction]] = []
    vertices = list(G.vertices)
    taken = set(vertices)
    point_name: dict[tuple[int, Fraction], str] = {}
    for i, (u, v) in enumerate(G.edges):
        ts = sorted(cuts[i])
        path = [u]
        for t in ts:
            name = f"e{i}@{t}"
            while name in taken:
                name += "'"
            taken.add(name)
            vertices.append(name)
            point_name[(i, t)] = name
            path.append(name)
        path.append(v)
        marks = [Fraction(0)] + ts + [curve.length[i]]
        for a, b, s, e in zip(path, path[1:], marks, marks[1:]):
            segments.append((a, b, e - s))

    scale = granularity
    for _, _, s in segments:
        scale = lcm(scale, s.denominator * granularity)
    units = [(a, b, int(s * scale)) for a, b, s in segments]
    size = len(vertices) + sum(m - 1 for _, _, m in units)
    if size > budget:
        raise ModelTooLargeError(size, budget)

    rank_determining = tuple(vertices)
    edges = []
    for k, (a, b, m) in enumerate(units):
        prev = a
        for j in range(1, m):
            name = f"s{k}#u{j}"
            while name in taken:
                name += "'"
            taken.add(name)
            vertices.append(name)
            edges.append((prev, name))
            prev = name
        edges.append((prev, b))
    H = Multigraph(tuple(vertices), tuple(edges))
    values: dict[str, int] = {}
    for loc, c in D.terms:
        key = loc if isinstance(loc, str) else point_name[loc]
        values[key] = values.get(key, 0) + c
    return FiniteModel(H, Divisor.from_dict(H.vertices, values), rank_determining, scale)


def tropical_rank(
    curve: TropicalCurve,
    D: TropicalDivisor,
    *,
    epsilon=1,
    granularity: int = 1,
    budget: int = DEFAULT_BUDGET,
    restrict_search: bool = True,
) -> int:
    """Rank of ``D`` on the epsilon-model of ``curve``.

    With ``restrict_search`` (the default) the rank search only subtracts
    points at the model vertices listed in ``FiniteModel.rank_determining``.
    """
    D.check_on(curve)
    model_curve, _ = epsilon_model(curve, epsilon)
    model = discretize(model_curve, D, granularity=granularity, budget=budget)
    cand = model.rank_determining if restrict_search else None
    return rank_plain(model.graph, model.divisor, candidates=cand).rank


def tropical_rr_check(curve: TropicalCurve, D: TropicalDivisor, **kwargs) -> RiemannRochReport:
    K = tropical_canonical(curve)
    return RiemannRochReport(
        tropical_rank(curve, D, **kwargs),
        tropical_rank(curve, K - D, **kwargs),
        D.degree,
        curve.genus,
    )


__all__: Sequence[str] = [
    "DEFAULT_BUDGET",
    "FiniteModel",
    "ModelTooLargeError",
    "PseudoMetricGraph",
    "TropicalCurve",
    "TropicalDivisor",
    "discretize",
    "epsilon_model",
    "format_tropical_divisor",
    "from_pseudo_metric",
    "scale_curve",
    "to_pseudo_metric",
    "tropical_canonical",
    "tropical_rank",
    "tropical_rr_check",
]
