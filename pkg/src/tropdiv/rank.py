"""Ranks of divisors: the Baker-Norine rank, the loop-aware rank computed on
the hat graph, the weighted rank computed on the virtual graph, canonical
divisors and Riemann-Roch checks.

Rank search
-----------
The rank satisfies ``r(D) = -1`` when ``|D|`` is empty and otherwise
``r(D) = 1 + min_v r(D - v)``. Since ``r`` is constant on linear
equivalence classes, the recursion is memoised on q-reduced forms, so each
class is solved once. The reported witness is the lexicographically least
failing effective divisor of degree ``r + 1`` (multisets ordered by vertex
position), exactly what a plain enumeration ``k = 0, 1, ...`` would find
first; it is recovered by a greedy descent over the same recursion.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .divisor import Divisor, _reduce_vector, has_effective_representative, pullback
from .graph import InputError, Multigraph, WeightedGraph, hat, virtual_graph, weighted_genus


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: Divisor | None = None

    def __int__(self):
        return self.rank


class _RankSolver:
    """Memoised rank computations on one connected graph."""

    def __init__(self, G: Multigraph):
        G.require_connected()
        self.G = G
        self.n = len(G.vertices)
        self._reduced: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._rank: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}

    def reduce(self, c: tuple[int, ...]) -> tuple[int, ...]:
        r = self._reduced.get(c)
        if r is None:
            r = tuple(_reduce_vector(self.G, list(c), 0))
            self._reduced[c] = r
        return r

    def rank(self, c: tuple[int, ...], cand: tuple[int, ...]) -> int:
        if sum(c) < 0:
            return -1
        red = self.reduce(c)
        if red[0] < 0:
            return -1
        key = (red, cand)
        hit = self._rank.get(key)
        if hit is not None:
            return hit
        best = None
        work = list(red)
        for i in cand:
            work[i] -= 1
            r = self.rank(tuple(work), cand)
            work[i] += 1
            if best is None or r < best:
                best = r
                if best == -1:
                    break
        result = 1 + best
        self._rank[key] = result
        return result

    def witness(self, c: tuple[int, ...], r: int, cand: tuple[int, ...]) -> tuple[int, ...]:
        """Lex-least multiset ``E`` over ``cand`` with ``|c - E|`` empty, ``deg E = r + 1``."""
        E = [0] * self.n
        work = list(c)
        need = r + 1
        start = 0
        while need:
            for pos in range(start, len(cand)):
                i = cand[pos]
                work[i] -= 1
                # E' of degree need-1 over cand[pos:] can fail for work
                # iff the rank of work is below need-1.
                if self.rank(tuple(work), cand) < need - 1:
                    E[i] += 1
                    need -= 1
                    start = pos
                    break
                work[i] += 1
            else:  # pragma: no cover - guaranteed by the recursion
                raise RuntimeError("witness search failed")
        return tuple(E)


@lru_cache(maxsize=64)
def _solver(G: Multigraph) -> _RankSolver:
    return _RankSolver(G)


def _candidate_indices(G: Multigraph, candidates: Iterable[str] | None) -> tuple[int, ...]:
    if candidates is None:
        return tuple(range(len(G.vertices)))
    idx = sorted({G.index[G.check_vertex(v)] for v in candidates})
    if not idx:
        raise InputError("candidate vertex set is empty")
    return tuple(idx)


def rank_plain(G: Multigraph, D: Divisor, *, candidates: Iterable[str] | None = None) -> RankResult:
    """Baker-Norine rank of ``D`` on ``G`` (loops ignored).

    ``candidates`` restricts the effective divisors ``E`` to a vertex subset.
    This only gives the true rank when the subset is rank-determining, such as
    the vertices of a loopless model inside one of its subdivisions.
    """
    G.require_connected()
    if D.vertices != G.vertices:
        raise InputError("divisor is not defined over this graph's vertices")
    solver = _solver(G)
    cand = _candidate_indices(G, candidates)
    c = D.coeffs
    limit = sys.getrecursionlimit()
    if max(D.degree, 0) + 100 > limit:
        sys.setrecursionlimit(D.degree + 1000)
    r = solver.rank(c, cand)
    return RankResult(r, Divisor(G.vertices, solver.witness(c, r, cand)))


def rank_bruteforce(G: Multigraph, D: Divisor) -> RankResult:
    """Rank by direct enumeration of effective ``E`` for ``k = 0, 1, ...``.

    Exponential; kept as an independent reference for small cases.
    """
    G.require_connected()
    vs = G.vertices
    for k in range(0, max(D.degree, -1) + 2):
        for combo in combinations_with_replacement(range(len(vs)), k):
            E = [0] * len(vs)
            for i in combo:
                E[i] += 1
            E_div = Divisor(vs, E)
            if not has_effective_representative(G, D - E_div):
                return RankResult(k - 1, E_div)
    raise AssertionError("unreachable: degree bound exceeded")


def rank_sharp(G: Multigraph, D: Divisor) -> RankResult:
    """Rank on the hat graph; the witness lives on ``hat(G)``."""
    G.require_connected()
    H, vmap = hat(G)
    return rank_plain(H, pullback(vmap, D))


def rank_weighted(GW: WeightedGraph, D: Divisor) -> RankResult:
    Gw, _ = virtual_graph(GW)
    return rank_sharp(Gw, D)


def canonical(GW: WeightedGraph | Multigraph) -> Divisor:
    """``sum (val(v) + 2 weight(v) - 2) v``; loops count twice toward ``val``."""
    if isinstance(GW, Multigraph):
        GW = WeightedGraph.unweighted(GW)
    G = GW.graph
    return Divisor(G.vertices, (G.valence(v) + 2 * GW.weight[v] - 2 for v in G.vertices))


@dataclass(frozen=True)
class RiemannRochReport:
    rank: int
    rank_residual: int
    degree: int
    genus: int

    @property
    def lhs(self) -> int:
        return self.rank - self.rank_residual

    @property
    def rhs(self) -> int:
        return self.degree - self.genus + 1

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "rank_residual": self.rank_residual,
            "degree": self.degree,
            "genus": self.genus,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }


def riemann_roch_check(GW: WeightedGraph | Multigraph, D: Divisor) -> RiemannRochReport:
    """Compute ``r(D)`` and ``r(K - D)`` with the weighted rank and compare
    ``r(D) - r(K - D)`` against ``deg D - g + 1``."""
    if isinstance(GW, Multigraph):
        GW = WeightedGraph.unweighted(GW)
    K = canonical(GW)
    return RiemannRochReport(
        rank_weighted(GW, D).rank,
        rank_weighted(GW, K - D).rank,
        D.degree,
        weighted_genus(GW),
    )


def rose_rank(g: int, d: int) -> int:
    """Closed-form rank of ``d v`` on a single vertex of genus ``g`` (``d <= 2g``)."""
    if g < 1:
        raise InputError("rose genus must be at least 1")
    if d > 2 * g:
        raise InputError(f"closed form needs d <= 2g, got d={d}, g={g}")
    return -1 if d < 0 else d // 2


def clear_caches() -> None:
    _solver.cache_clear()


__all__: Sequence[str] = [
    "RankResult",
    "RiemannRochReport",
    "canonical",
    "clear_caches",
    "rank_bruteforce",
    "rank_plain",
    "rank_sharp",
    "rank_weighted",
    "riemann_roch_check",
    "rose_rank",
]
