"""Immutable weighted graph plus the ball and connectivity queries.

The graph lives in compressed adjacency (CSR) arrays so the hot searches
touch flat memory only.  Every algorithm in the package treats a
:class:`Graph` as read-only shared state: construction validates the
simplicity invariants once (no loops, no parallel edges, positive integral
weights) and nothing mutates the arrays afterwards, so instances are safe
to share across worker threads.

The central geometric primitive is the *ball of diameter d* around a
vertex ``v``: the subgraph made of every vertex and edge that lies on a
closed walk of total weight at most ``d`` through ``v``.  Membership is
decided by two distance predicates,

* vertex ``u`` is in the ball iff ``2 * dist(v, u) <= d``,
* edge ``xy`` of weight ``w`` is in the ball iff
  ``dist(v, x) + w + dist(v, y) <= d``,

which correspond to the cheapest out-and-back walk through the vertex or
edge.  The equivalence with literal walk enumeration is not assumed; it is
enforced by tests against :func:`localsep.oracles.ball_by_walk_enumeration`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InputError

# Sum of all edge weights must stay below this so that any distance or walk
# length computed with int64 arithmetic cannot overflow.
MAX_TOTAL_WEIGHT = 2**62


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with positive integer edge weights.

    Vertices are dense integers ``0..n-1``.  ``labels[v]`` keeps the
    original id token from the input for output fidelity; ``coords`` is an
    optional ``(n, 2)`` float array of planar positions in input units.

    Adjacency is stored CSR-style: the neighbours of ``v`` are
    ``nbr[indptr[v]:indptr[v+1]]``, sorted ascending, with parallel arrays
    ``wt`` (weights) and ``eid`` (edge ids).  ``edge_array`` has one row
    ``(u, v, w)`` per edge with ``u < v``; the row index is the edge id.
    """

    indptr: np.ndarray
    nbr: np.ndarray
    wt: np.ndarray
    eid: np.ndarray
    edge_array: np.ndarray
    labels: tuple[str, ...]
    coords: np.ndarray | None = None

    @property
    def vertex_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.edge_array)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.nbr[self.indptr[v] : self.indptr[v + 1]]

    def adjacency(self, v: int) -> Iterator[tuple[int, int, int]]:
        """Yield ``(neighbor, weight, edge_id)`` triples, neighbors ascending."""
        lo, hi = int(self.indptr[v]), int(self.indptr[v + 1])
        for i in range(lo, hi):
            yield int(self.nbr[i]), int(self.wt[i]), int(self.eid[i])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = int(np.searchsorted(row, v))
        return i < len(row) and row[i] == v

    def edge_weight(self, u: int, v: int) -> int:
        row = self.neighbors(u)
        i = int(np.searchsorted(row, v))
        if i >= len(row) or row[i] != v:
            raise InputError(f"no edge {u}-{v}")
        return int(self.wt[self.indptr[u] + i])

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise InputError(f"vertex id {v} out of range 0..{self.vertex_count - 1}")

    def edge_endpoints(self, edge_id: int) -> tuple[int, int, int]:
        u, v, w = self.edge_array[edge_id]
        return int(u), int(v), int(w)

    @classmethod
    def from_edge_list(
        cls,
        edges: Iterable[tuple[int, int, int]],
        vertex_count: int | None = None,
        labels: Sequence[str] | None = None,
        coords: np.ndarray | Sequence[tuple[float, float]] | None = None,
    ) -> "Graph":
        """Build a graph from ``(u, v, weight)`` triples.

        Raises :class:`InputError` on loops, parallel edges (in either
        orientation), non-positive or non-integral weights, ids outside
        ``0..vertex_count-1``, or a total weight too large for safe int64
        distance arithmetic.
        """
        raw = np.array(list(edges), dtype=np.float64).reshape(-1, 3)
        if len(raw) and (np.abs(raw) >= 2**53).any():
            raise InputError("edge values too large for exact validation")
        rows = raw.astype(np.int64)
        if not np.array_equal(rows, raw):
            k = int(np.nonzero((rows != raw).any(axis=1))[0][0])
            raise InputError(
                f"edge ({raw[k, 0]:g},{raw[k, 1]:g}) has invalid weight {raw[k, 2]!r}; "
                "weights are integers >= 1"
            )
        if vertex_count is None:
            vertex_count = int(rows[:, :2].max()) + 1 if len(rows) else 0
        n = int(vertex_count)
        if n < 0:
            raise InputError("vertex count must be non-negative")

        m = len(rows)
        if m:
            if int(rows[:, :2].min()) < 0 or int(rows[:, :2].max()) >= n:
                k = int(
                    np.nonzero((rows[:, :2] < 0).any(axis=1) | (rows[:, :2] >= n).any(axis=1))[0][0]
                )
                raise InputError(
                    f"edge ({rows[k, 0]},{rows[k, 1]}) references a vertex outside 0..{n - 1}"
                )
            loops = rows[:, 0] == rows[:, 1]
            if loops.any():
                raise InputError(f"loop at vertex {rows[int(np.nonzero(loops)[0][0]), 0]}")
            if (rows[:, 2] < 1).any():
                k = int(np.nonzero(rows[:, 2] < 1)[0][0])
                raise InputError(
                    f"edge ({rows[k, 0]},{rows[k, 1]}) has invalid weight {rows[k, 2]}; "
                    "weights are integers >= 1"
                )
            lo_end = np.minimum(rows[:, 0], rows[:, 1])
            hi_end = np.maximum(rows[:, 0], rows[:, 1])
            keys = lo_end * n + hi_end
            if len(np.unique(keys)) != m:
                order = np.argsort(keys, kind="stable")
                dup = int(order[1 + int(np.nonzero(np.diff(keys[order]) == 0)[0][0])])
                raise InputError(f"parallel edge ({rows[dup, 0]},{rows[dup, 1]})")
            if int(rows[:, 2].sum()) >= MAX_TOTAL_WEIGHT:
                raise InputError("total edge weight too large for 64-bit distance arithmetic")
            rows = np.stack([lo_end, hi_end, rows[:, 2]], axis=1)
        else:
            rows = rows.reshape(0, 3)

        # symmetric CSR with each adjacency row sorted by neighbor id
        src = np.concatenate([rows[:, 0], rows[:, 1]])
        dst = np.concatenate([rows[:, 1], rows[:, 0]])
        w2 = np.concatenate([rows[:, 2], rows[:, 2]])
        e2 = np.concatenate([np.arange(m, dtype=np.int64)] * 2) if m else np.empty(0, np.int64)
        order = np.lexsort((dst, src))
        nbr = dst[order]
        wt = w2[order]
        eid = e2[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])

        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise InputError(f"{len(labels)} labels for {n} vertices")
        if coords is not None:
            coords = np.asarray(coords, dtype=np.float64).reshape(n, 2)
        return cls(
            indptr=indptr,
            nbr=nbr,
            wt=wt,
            eid=eid,
            edge_array=rows,
            labels=labels,
            coords=coords,
        )

    def edge_list(self) -> list[tuple[int, int, int]]:
        """Edges as ``(u, v, weight)`` with ``u < v``, in edge-id order."""
        return [tuple(map(int, row)) for row in self.edge_array]


@dataclass(frozen=True)
class Ball:
    """The ball of diameter ``d`` around ``root``: a subgraph of its parent.

    ``distances`` maps each member vertex to its weighted shortest-path
    distance from the root; ``member_edges`` holds edge ids.
    """

    root: int
    diameter: int
    distances: dict[int, int]
    member_edges: frozenset[int]

    @property
    def member_vertices(self) -> set[int]:
        return set(self.distances)

    @property
    def size(self) -> int:
        """Vertex count plus edge count."""
        return len(self.distances) + len(self.member_edges)


@dataclass(frozen=True)
class VertexPartition:
    """Partition of a vertex subset into connected blocks.

    Blocks are sorted tuples ordered by their smallest element, so the
    partition is deterministic for a given graph.
    """

    blocks: tuple[tuple[int, ...], ...]
    _block_of: dict[int, int] = field(repr=False)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "VertexPartition":
        normalized = sorted(tuple(sorted(b)) for b in blocks if b)
        block_of = {v: i for i, b in enumerate(normalized) for v in b}
        return cls(blocks=tuple(normalized), _block_of=block_of)

    def block_of(self, v: int) -> int:
        return self._block_of[v]

    def __len__(self) -> int:
        return len(self.blocks)

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(b) for b in self.blocks}


def bounded_distances(graph: Graph, v: int, limit: int) -> dict[int, int]:
    """Weighted shortest-path distances from ``v``, truncated at ``limit``.

    Returns exact distances for every vertex within ``limit``; vertices
    further away are absent.
    """
    graph.check_vertex(v)
    if limit < 0:
        raise InputError(f"distance limit must be >= 0, got {limit}")
    dist: dict[int, int] = {v: 0}
    heap: list[tuple[int, int]] = [(0, v)]
    indptr, nbr, wt = graph.indptr, graph.nbr, graph.wt
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for i in range(int(indptr[u]), int(indptr[u + 1])):
            nd = du + int(wt[i])
            if nd > limit:
                continue
            w = int(nbr[i])
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    return dist


def ball(graph: Graph, v: int, d: int) -> Ball:
    """Compute the ball of diameter ``d`` around ``v``.

    One weight-bounded search truncated at ``d // 2`` fixes the vertex
    set; the edge predicate then selects the member edges.
    """
    if d <= 0:
        raise InputError(f"ball diameter must be positive, got {d}")
    dist = bounded_distances(graph, v, d // 2)
    edges: set[int] = set()
    indptr, nbr, wt, eid = graph.indptr, graph.nbr, graph.wt, graph.eid
    for u, du in dist.items():
        for i in range(int(indptr[u]), int(indptr[u + 1])):
            w = int(nbr[i])
            if w <= u:
                continue
            dw = dist.get(w)
            if dw is not None and du + int(wt[i]) + dw <= d:
                edges.add(int(eid[i]))
    return Ball(root=v, diameter=d, distances=dist, member_edges=frozenset(edges))


def ball_components(graph: Graph, b: Ball, exclude: frozenset[int] | set[int] = frozenset()) -> list[list[int]]:
    """Connected components of the ball minus ``exclude``, as sorted lists.

    Only member vertices and member edges of the ball participate; the
    result is ordered by smallest contained vertex.
    """
    members = set(b.distances) - set(exclude)
    member_edges = b.member_edges
    seen: set[int] = set()
    comps: list[list[int]] = []
    for start in sorted(members):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w, _, e in graph.adjacency(u):
                if w in members and w not in seen and e in member_edges:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def components(graph: Graph, removed: Iterable[int] = ()) -> VertexPartition:
    """Connected components of the subgraph induced on ``V(G)`` minus ``removed``."""
    removed_set = set()
    for v in removed:
        graph.check_vertex(v)
        removed_set.add(v)
    alive = [v for v in range(graph.vertex_count) if v not in removed_set]
    seen: set[int] = set()
    blocks: list[list[int]] = []
    for start in alive:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in graph.neighbors(u):
                w = int(w)
                if w not in removed_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        blocks.append(comp)
    return VertexPartition.from_blocks(blocks)


def max_ball_size(graph: Graph, d: int) -> int:
    """Maximum over all vertices of ``|V(ball)| + |E(ball)|`` at diameter ``d``.

    This is the statistic that governs the running-time bounds of every
    local-separator search; metadata outputs report it as ``r_statistic``.
    """
    if d <= 0:
        raise InputError(f"ball diameter must be positive, got {d}")
    if graph.vertex_count == 0:
        return 0
    from ._kernels import ball_sizes

    return int(ball_sizes(graph, d).max())


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled densely, labels preserved."""
    verts = sorted(set(vertices))
    for v in verts:
        graph.check_vertex(v)
    remap = {v: i for i, v in enumerate(verts)}
    edges = []
    for u in verts:
        for w, weight, _ in graph.adjacency(u):
            if u < w and w in remap:
                edges.append((remap[u], remap[w], weight))
    coords = graph.coords[verts] if graph.coords is not None else None
    return Graph.from_edge_list(
        edges,
        vertex_count=len(verts),
        labels=[graph.labels[v] for v in verts],
        coords=coords,
    )


def eccentricities(graph: Graph) -> list[int]:
    """Weighted eccentricity of every vertex within its own component.

    Quadratic in the graph size; intended for small instances and for
    computing the saturation locality below.
    """
    ecc = []
    big = MAX_TOTAL_WEIGHT
    for v in range(graph.vertex_count):
        dist = bounded_distances(graph, v, big)
        ecc.append(max(dist.values()))
    return ecc


def saturation_locality(graph: Graph) -> int:
    """Smallest documented ``d`` at which every ball saturates to its component.

    Equals ``2 * diameter + max edge weight``; at or beyond this value the
    local notions coincide with the classical global ones, which is how the
    package exposes the "unbounded locality" regime.
    """
    if graph.vertex_count == 0:
        return 1
    diam = max(eccentricities(graph), default=0)
    maxw = int(graph.edge_array[:, 2].max()) if graph.edge_count else 1
    return max(1, 2 * diam + maxw)
