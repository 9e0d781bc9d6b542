"""Constructors for the named graphs used in tests and documentation."""

from __future__ import annotations

import random

from .graph import Graph


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def heawood_graph() -> Graph:
    """Cubic bipartite graph on 14 vertices with girth 6."""
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph(14, edges)


def prism_graph(k: int) -> Graph:
    """Circular ladder C_k x K_2 (cubic, 2k vertices)."""
    if k < 3:
        raise ValueError("prism needs k >= 3")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return Graph(2 * k, edges)


def moebius_ladder(k: int) -> Graph:
    """Cycle C_{2k} plus the k long diagonals (cubic, 2k vertices)."""
    if k < 2:
        raise ValueError("moebius ladder needs k >= 2")
    n = 2 * k
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, i + k) for i in range(k)]
    return Graph(n, edges)


def circulant_graph(n: int, steps) -> Graph:
    edges = {(min(i, (i + s) % n), max(i, (i + s) % n)) for i in range(n) for s in steps}
    return Graph(n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    n = 0
    edges = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.sorted_edges())
        n += g.n
    return Graph(n, edges)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_cubic_graph(n: int, rng: random.Random, max_tries: int = 10_000) -> Graph:
    """Random simple cubic graph via the pairing model with rejection."""
    if n < 4 or n % 2:
        raise ValueError("cubic graphs need even n >= 4")
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return Graph(n, edges)
    raise RuntimeError(f"no simple cubic graph found in {max_tries} pairing attempts")
