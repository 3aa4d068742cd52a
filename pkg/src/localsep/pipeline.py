"""Road-network preprocessing and the d-sweep experiment.

Input networks come as node positions plus an edge list.  Preprocessing
turns positions into integer edge weights, strips hanging trees (iterated
degree-one deletion) and contracts long corridors (degree-two suppression
with weight addition), keeping the graph simple throughout: whenever a
contraction would create a loop or a parallel edge, the offending chain
keeps one representative vertex instead.

The d-sweep reruns the cutvertex search over a list of localities and
tabulates, per ``d``, the number of local cutvertices, the number of
clusters they induce, and the size of the biggest cluster.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cutvertices import find_local_cutvertices, local_blocks
from .errors import InputError, PreconditionError
from .graph import Graph

logger = logging.getLogger(__name__)


def round_half_up(x: float | Fraction) -> int:
    """Deterministic rounding with .5 going up; used for all weight scaling."""
    if isinstance(x, Fraction):
        return int((x + Fraction(1, 2)).__floor__())
    return int(math.floor(x + 0.5))


def scaled_weight(value: Fraction | float | int, scale: Fraction | float | int) -> int:
    """Integer weight after scaling, clamped to at least 1."""
    if isinstance(value, int) and scale == 1:
        return max(1, value)
    if isinstance(value, (Fraction, int)) and isinstance(scale, (Fraction, int)):
        return max(1, round_half_up(Fraction(value) * scale))
    return max(1, round_half_up(float(value) * float(scale)))


def euclidean_weights(
    coords: Sequence[tuple[float, float]] | np.ndarray,
    edges: Iterable[tuple[int, int]],
    scale: Fraction | float | int = 1,
    labels: Sequence[str] | None = None,
) -> Graph:
    """Graph with edge weights from scaled planar distances.

    Each weight is ``round(scale * euclidean distance)`` with half-up
    rounding, clamped to a minimum of 1; coincident endpoints therefore get
    weight 1, and the number of such clamps is logged as a warning.  The
    caller interprets localities ``d`` in the same scaled units.
    """
    pts = np.asarray(coords, dtype=np.float64)
    if pts.ndim != 2 or (len(pts) and pts.shape[1] != 2):
        raise InputError("coordinates must be an (n, 2) table")
    n = len(pts)
    scale_f = float(scale)
    if scale_f <= 0:
        raise InputError(f"scale must be positive, got {scale}")
    triples = []
    clamped = 0
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u},{v}) references a missing node")
        dist = math.hypot(pts[u, 0] - pts[v, 0], pts[u, 1] - pts[v, 1])
        w = round_half_up(scale_f * dist)
        if w < 1:
            clamped += 1
            w = 1
        triples.append((u, v, w))
    if clamped:
        logger.warning("%d edge weights clamped to 1 (coincident or sub-scale nodes)", clamped)
    return Graph.from_edge_list(triples, vertex_count=n, labels=labels, coords=pts)


def prune_degree_one(graph: Graph) -> Graph:
    """Iteratively delete vertices of degree at most one.

    Hanging trees disappear entirely (a bare path prunes to nothing);
    cycles and 2-connected material survive untouched.
    """
    degree = [graph.degree(v) for v in range(graph.vertex_count)]
    removed = [False] * graph.vertex_count
    queue = [v for v in range(graph.vertex_count) if degree[v] <= 1]
    while queue:
        v = queue.pop()
        if removed[v]:
            continue
        removed[v] = True
        for w in graph.neighbors(v):
            w = int(w)
            if not removed[w]:
                degree[w] -= 1
                if degree[w] <= 1:
                    queue.append(w)
    survivors = [v for v in range(graph.vertex_count) if not removed[v]]
    remap = {v: i for i, v in enumerate(survivors)}
    edges = [
        (remap[u], remap[v], w)
        for u, v, w in graph.edge_list()
        if u in remap and v in remap
    ]
    return Graph.from_edge_list(
        edges,
        vertex_count=len(survivors),
        labels=[graph.labels[v] for v in survivors],
        coords=graph.coords[survivors] if graph.coords is not None else None,
    )


def suppress_degree_two(graph: Graph) -> Graph:
    """Contract chains of degree-two vertices into single weighted edges.

    Requires a graph without degree-one vertices.  Each suppressed vertex
    is replaced by an edge whose weight is the sum of the two removed
    edges, so chain weights are conserved.  A vertex whose contraction
    would create a loop or a parallel edge is kept as the chain's
    representative, preserving simplicity; an isolated cycle therefore
    shrinks to a triangle, never further.
    """
    if any(graph.degree(v) == 1 for v in range(graph.vertex_count)):
        raise PreconditionError("degree-two suppression expects no degree-one vertices")

    adj: dict[int, dict[int, int]] = {
        v: {w: wt for w, wt, _ in graph.adjacency(v)} for v in range(graph.vertex_count)
    }
    # worklist: a contraction rewires its two neighbours, which can make a
    # previously guarded vertex contractible, so those are re-examined
    heap = list(range(graph.vertex_count))
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if v not in adj or len(adj[v]) != 2:
            continue
        (a, wa), (b, wb) = sorted(adj[v].items())
        if b in adj[a]:
            continue  # loop or parallel edge guard: keep the representative
        del adj[a][v]
        del adj[b][v]
        del adj[v]
        adj[a][b] = wa + wb
        adj[b][a] = wa + wb
        heapq.heappush(heap, a)
        heapq.heappush(heap, b)

    survivors = sorted(adj)
    remap = {v: i for i, v in enumerate(survivors)}
    edges = [
        (remap[u], remap[w], wt)
        for u in survivors
        for w, wt in sorted(adj[u].items())
        if u < w
    ]
    return Graph.from_edge_list(
        edges,
        vertex_count=len(survivors),
        labels=[graph.labels[v] for v in survivors],
        coords=graph.coords[survivors] if graph.coords is not None else None,
    )


@dataclass(frozen=True)
class SweepRow:
    d: int
    cutvertices: int
    clusters: int
    largest_cluster: int


def sweep_d(graph: Graph, d_values: Iterable[int], jobs: int | None = None) -> list[SweepRow]:
    """Cutvertex statistics for every requested locality, in input order.

    Each run is independent; inner searches use the package's own
    parallelism, so the rows are deterministic for any worker count.
    """
    rows = []
    for d in d_values:
        cuts = find_local_cutvertices(graph, int(d), jobs=jobs)
        blocks = local_blocks(graph, cuts)
        rows.append(
            SweepRow(
                d=int(d),
                cutvertices=len(cuts),
                clusters=len(blocks),
                largest_cluster=max((len(b) for b in blocks.blocks), default=0),
            )
        )
    return rows
