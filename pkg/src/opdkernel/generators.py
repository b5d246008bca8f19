"""Seeded random instances: outerplanar bases plus a few apex vertices."""

from __future__ import annotations

import random

from .graph import Graph


def random_maximal_outerplanar(rng: random.Random, n: int, first: int = 1) -> tuple[Graph, list[tuple[int, int]]]:
    """Random triangulated polygon on labels first..first+n-1.

    Built by gluing one triangle at a time onto a random outer edge. Returns
    the graph and its outer-cycle edges.
    """
    if n < 3:
        g = Graph(vertices=range(first, first + n))
        if n == 2:
            g.add_edge(first, first + 1)
        return g, list(g.edges())
    a, b, c = first, first + 1, first + 2
    g = Graph([(a, b), (b, c), (a, c)])
    outer = [(a, b), (b, c), (c, a)]
    for v in range(first + 3, first + n):
        i = rng.randrange(len(outer))
        x, y = outer[i]
        g.add_edge(x, v)
        g.add_edge(v, y)
        outer[i] = (x, v)
        outer.append((v, y))
    return g, outer


def random_biconnected_outerplanar(rng: random.Random, n: int, chord_keep: float = 1.0, first: int = 1) -> Graph:
    """Outer cycle on n >= 3 vertices plus each chord of a random triangulation
    kept with probability chord_keep."""
    g, outer = random_maximal_outerplanar(rng, n, first)
    cycle = {frozenset(e) for e in outer}
    for u, v in g.edges():
        if frozenset((u, v)) not in cycle and rng.random() >= chord_keep:
            g.remove_edge(u, v)
    return g


def generate_instance(
    seed: int,
    n_base: int,
    k_apex: int,
    p_edge: float = 0.5,
    drop_edge: float = 0.0,
) -> tuple[Graph, dict]:
    """Outerplanar base with k_apex extra vertices, so opd <= k_apex.

    Base vertices are 1..n_base, apex vertices follow. Each base edge is
    dropped with probability drop_edge; each apex is joined to every earlier
    vertex with probability p_edge.
    """
    rng = random.Random(seed)
    g, _ = random_maximal_outerplanar(rng, n_base)
    for u, v in g.edges():
        if rng.random() < drop_edge:
            g.remove_edge(u, v)
    apexes = list(range(n_base + 1, n_base + k_apex + 1))
    for a in apexes:
        g.add_vertex(a)
        for v in range(1, a):
            if rng.random() < p_edge:
                g.add_edge(a, v)
    meta = {
        "seed": seed,
        "n_base": n_base,
        "k_apex": k_apex,
        "p_edge": p_edge,
        "drop_edge": drop_edge,
        "apexes": apexes,
    }
    return g, meta
