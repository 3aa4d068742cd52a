"""Deterministic test-data generators.

These live in the library, not the test suite, so that benchmark and
acceptance numbers can be reproduced outside of pytest.  Everything is
seeded and platform-stable.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .graph import Graph
from .pipeline import euclidean_weights


def cycle_graph(n: int, weight: int = 1) -> Graph:
    """Unit-weight cycle 0-1-...-(n-1)-0."""
    return Graph.from_edge_list(
        [(i, (i + 1) % n, weight) for i in range(n)], vertex_count=n
    )


def path_graph(n: int, weight: int = 1) -> Graph:
    return Graph.from_edge_list(
        [(i, i + 1, weight) for i in range(n - 1)], vertex_count=n
    )


def complete_graph(n: int) -> Graph:
    return Graph.from_edge_list(
        [(i, j, 1) for i in range(n) for j in range(i + 1, n)], vertex_count=n
    )


def gnp_random_graph(
    n: int, p: float, seed: int, weights: tuple[int, ...] = (1,), connected: bool = False
) -> Graph:
    """Erdos-Renyi style graph with weights drawn from ``weights``.

    With ``connected=True``, a random spanning tree is added first so the
    sample is connected by construction.
    """
    rng = random.Random(seed)
    edges: dict[tuple[int, int], int] = {}
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            u = order[rng.randrange(i)]
            v = order[i]
            edges[(min(u, v), max(u, v))] = rng.choice(weights)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges[(u, v)] = rng.choice(weights)
    return Graph.from_edge_list(
        [(u, v, w) for (u, v), w in sorted(edges.items())], vertex_count=n
    )


def random_geometric_graph(
    n: int, radius: float, seed: int, scale: Fraction | float | int = 1
) -> Graph:
    """Random geometric graph on the unit square with scaled metric weights.

    Points are uniform; vertices closer than ``radius`` are joined and the
    edge weight is the scaled, half-up-rounded euclidean distance
    (minimum 1).  Uses a KD-tree, so generation stays fast at a few
    hundred thousand vertices.
    """
    from scipy.spatial import cKDTree

    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    tree = cKDTree(pts)
    pairs = tree.query_pairs(radius, output_type="ndarray")
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    pairs = pairs[order]
    return euclidean_weights(pts, [(int(u), int(v)) for u, v in pairs], scale=scale)
