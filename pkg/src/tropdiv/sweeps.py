"""Exhaustive and sampled verification sweeps, shared by tests and scripts."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .divisor import Divisor, is_equivalent, jacobian, principal_generator, pullback, spanning_tree_count
from .graph import VertexMap, hat, subdivide
from .rank import rank_plain, rank_sharp, riemann_roch_check
from .sampling import (
    connected_multigraphs,
    random_connected_graph,
    random_divisor,
    random_tropical_curve,
    random_tropical_divisor,
    random_wedge,
    sweep_divisors,
    weight_assignments,
)
from .tropical import scale_curve, tropical_rank, tropical_rr_check


@dataclass
class SweepSummary:
    graphs: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    riemann_checks: int = 0
    riemann_failures: list = field(default_factory=list)
    seconds: float = 0.0


def weighted_sweep_graphs(max_vertices=4, max_edges=6, max_weight=2):
    for G in connected_multigraphs(max_vertices, max_edges):
        yield from weight_assignments(G, max_weight)


def riemann_roch_sweep(
    max_vertices=4, max_edges=6, max_weight=2, divisors_per_graph=20, seed=0, stride=1, progress=None
) -> SweepSummary:
    """Check Riemann-Roch (and Riemann's bound) on every ``stride``-th weighted graph."""
    rng = random.Random(seed)
    out = SweepSummary()
    start = time.perf_counter()
    for k, GW in enumerate(weighted_sweep_graphs(max_vertices, max_edges, max_weight)):
        if k % stride:
            continue
        out.graphs += 1
        for D in sweep_divisors(GW, divisors_per_graph, rng):
            rep = riemann_roch_check(GW, D)
            out.checks += 1
            if not rep.holds:
                out.failures.append((GW, D, rep))
            if rep.degree >= 2 * rep.genus - 1:
                out.riemann_checks += 1
                if rep.rank != rep.degree - rep.genus:
                    out.riemann_failures.append((GW, D, rep))
        if progress and out.graphs % progress == 0:
            print(f"  {out.graphs} graphs, {out.checks} divisors, {time.perf_counter() - start:.1f}s", flush=True)
    out.seconds = time.perf_counter() - start
    return out


def jacobian_sweep(max_vertices=4, max_edges=6):
    """``(graphs, mismatches)`` comparing Jacobian order with the spanning-tree count."""
    n, bad = 0, []
    for G in connected_multigraphs(max_vertices, max_edges):
        for H in (G, hat(G)[0]):
            n += 1
            if jacobian(H).order != spanning_tree_count(H):
                bad.append(H)
    return n, bad


def equivalence_sweep(triples=10_000, seed=0, max_vertices=4, max_edges=6):
    """``(triples, disagreements)`` between q-reduction and Smith-form membership."""
    rng = random.Random(seed)
    graphs = list(connected_multigraphs(max_vertices, max_edges))
    bad = []
    for _ in range(triples):
        G = rng.choice(graphs)
        D = random_divisor(rng, G.vertices, -3, 3)
        if rng.random() < 0.5:
            # equivalent by construction, up to the random perturbation below
            D2 = D
            for v in G.vertices:
                D2 = D2 + rng.randint(-2, 2) * principal_generator(G, v)
            if rng.random() < 0.3:
                v = rng.choice(G.vertices)
                D2 = D2 + Divisor.point(G.vertices, v) - Divisor.point(G.vertices, rng.choice(G.vertices))
        else:
            D2 = random_divisor(rng, G.vertices, -3, 3)
        if is_equivalent(G, D, D2) != is_equivalent(G, D, D2, method="snf"):
            bad.append((G, D, D2))
    return triples, bad


def loop_refinement_sweep(samples=60, seed=0):
    """Loop-aware rank before and after inserting 1-3 vertices in each loop."""
    rng = random.Random(seed)
    graphs = [G for G in connected_multigraphs(3, 5) if G.loop_indices]
    n, bad = 0, []
    for _ in range(samples):
        G = rng.choice(graphs)
        D = random_divisor(rng, G.vertices, -1, 4)
        r = rank_sharp(G, D).rank
        for k in (1, 2, 3):
            H, vmap = subdivide(G, {i: k for i in G.loop_indices})
            n += 1
            if rank_sharp(H, pullback(vmap, D)).rank != r:
                bad.append((G, D, k))
    return n, bad


def uniform_subdivision_sweep(samples=60, seed=0):
    rng = random.Random(seed)
    n, bad = 0, []
    for _ in range(samples):
        G = random_connected_graph(rng, rng.randint(2, 4), rng.randint(0, 3))
        D = random_divisor(rng, G.vertices, -1, 3)
        r = rank_plain(G, D).rank
        for k in (1, 2):
            H, vmap = subdivide(G, k)
            n += 1
            if rank_plain(H, pullback(vmap, D)).rank != r:
                bad.append((G, D, k))
    return n, bad


def wedge_subdivision_sweep(samples=60, seed=0):
    """Rank under subdividing the two wedge summands by different amounts."""
    rng = random.Random(seed)
    n, bad = 0, []
    for _ in range(samples):
        G, H1, H2, _ = random_wedge(rng)
        D = random_divisor(rng, G.vertices, -1, 3)
        r = rank_plain(G, D).rank
        for m in range(3):
            for k in range(3):
                counts = [m if i < len(H1.edges) else k for i in range(len(G.edges))]
                Gs, vmap = subdivide(G, counts)
                n += 1
                if rank_plain(Gs, pullback(vmap, D)).rank != r:
                    bad.append((G, D, m, k))
    return n, bad


def cut_vertex_sweep(samples=60, seed=0):
    """Both rank inequalities for divisors glued across a cut vertex."""
    rng = random.Random(seed)
    n, bad = 0, []
    for _ in range(samples):
        G, H1, H2, _ = random_wedge(rng, loops=True)
        D1 = random_divisor(rng, H1.vertices, -1, 3)
        D2 = random_divisor(rng, H2.vertices, -1, 3)
        i1 = pullback(VertexMap.inclusion(H1, G), D1)
        i2 = pullback(VertexMap.inclusion(H2, G), D2)
        r1, r2 = rank_plain(H1, D1).rank, rank_plain(H2, D2).rank
        n += 1
        ok = (
            rank_plain(G, i1 + i2).rank >= min(r1, r2)
            and r1 >= rank_plain(G, i1).rank
            and r2 >= rank_plain(G, i2).rank
        )
        if not ok:
            bad.append((G, D1, D2))
    return n, bad


def tropical_sample(count=30, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        c = random_tropical_curve(rng, max_vertices=3, max_weight=2, max_denominator=4)
        D = random_tropical_divisor(rng, c, rng.randint(1, 4), lo=-1, hi=3)
        out.append((c, D))
    return out


def tropical_invariance_sweep(sample):
    """``(checked, failures)``; each failure records which variant disagreed."""
    bad = []
    for c, D in sample:
        r = tropical_rank(c, D)
        nv = c.base.total_weight
        variants = {
            "epsilon=1/2": tropical_rank(c, D, epsilon=Fraction(1, 2)),
            "per-loop epsilon": tropical_rank(c, D, epsilon=[Fraction(1, 1 + i % 2) for i in range(nv)]),
            "scaled by 3": tropical_rank(scale_curve(c, 3), D.scaled(3)),
            "granularity 2": tropical_rank(c, D, granularity=2),
        }
        for name, value in variants.items():
            if value != r:
                bad.append((c, D, name, r, value))
    return len(sample), bad


def tropical_rr_sweep(sample):
    bad = []
    for c, D in sample:
        rep = tropical_rr_check(c, D)
        if not rep.holds:
            bad.append((c, D, rep))
    return len(sample), bad
