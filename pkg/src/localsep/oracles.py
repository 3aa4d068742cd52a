"""Brute-force reference implementations for certification and testing.

These are literal transcriptions of the definitions, guarded to small
instances.  They ship with the library rather than living only in the test
suite so that every derived expected value in the tests can be reproduced
by users.  Nothing here is fast; everything here is simple.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import InputError, PreconditionError
from .graph import Ball, Graph, VertexPartition, components

MAX_ORACLE_VERTICES = 16
MAX_ORACLE_DIAMETER = 12


def _guard(graph: Graph, d: int | None = None) -> None:
    if graph.vertex_count > MAX_ORACLE_VERTICES:
        raise InputError(
            f"oracle guard: {graph.vertex_count} vertices exceeds {MAX_ORACLE_VERTICES}"
        )
    if d is not None and d > MAX_ORACLE_DIAMETER:
        raise InputError(f"oracle guard: d={d} exceeds {MAX_ORACLE_DIAMETER}")


def ball_by_walk_enumeration(graph: Graph, v: int, d: int) -> Ball:
    """Ball of diameter ``d`` around ``v`` from literal closed-walk membership.

    A table of exact walk weights is grown one unit at a time:
    ``reach[u][L]`` holds iff some walk from ``v`` to ``u`` has total weight
    exactly ``L``.  A vertex belongs to the ball iff a closed walk through
    ``v`` of weight at most ``d`` visits it, i.e. iff two legs ``v..u`` and
    ``u..v`` fit into the budget; an edge belongs iff a walk reaches one
    endpoint, crosses the edge, and returns within the budget.
    """
    _guard(graph, d)
    graph.check_vertex(v)
    if d <= 0:
        raise InputError(f"ball diameter must be positive, got {d}")
    n = graph.vertex_count
    reach = np.zeros((n, d + 1), dtype=bool)
    reach[v, 0] = True
    for length in range(1, d + 1):
        for u in range(n):
            for w, weight, _ in graph.adjacency(u):
                if weight <= length and reach[w, length - weight]:
                    reach[u, length] = True
                    break
    legs = {u: [length for length in range(d + 1) if reach[u, length]] for u in range(n)}

    member = {}
    for u in range(n):
        best = min(
            (a + b for a in legs[u] for b in legs[u] if a + b <= d),
            default=None,
        )
        if best is not None:
            # record the metric distance label for comparability with ball()
            member[u] = min(legs[u])
    edges = set()
    for edge_id in range(graph.edge_count):
        x, y, w = graph.edge_endpoints(edge_id)
        if any(a + w + b <= d for a in legs[x] for b in legs[y]) or any(
            a + w + b <= d for a in legs[y] for b in legs[x]
        ):
            edges.add(edge_id)
    return Ball(root=v, diameter=d, distances=member, member_edges=frozenset(edges))


def connectivity_graph_full(graph: Graph, v0: int, v1: int, d: int):
    """Connectivity graph built from its literal definition, no simplification.

    Vertices are the neighbours of the pair; ``xy`` is an edge iff some
    path joins ``x`` and ``y`` inside a punctured ball of either pair
    member.  Returns a :class:`~localsep.separators.ConnectivityGraph`.
    """
    from .separators import ConnectivityGraph  # local import to avoid a cycle

    _guard(graph, d)
    graph.check_vertex(v0)
    graph.check_vertex(v1)
    if v0 == v1:
        raise PreconditionError("pair must consist of two distinct vertices")
    node_set = sorted(
        (set(int(x) for x in graph.neighbors(v0)) | set(int(x) for x in graph.neighbors(v1)))
        - {v0, v1}
    )
    edges = set()
    groups: dict[int, set[int]] = {x: {x} for x in node_set}
    for root in (v0, v1):
        b = ball_by_walk_enumeration(graph, root, d)
        comps = _subgraph_components(graph, set(b.distances) - {v0, v1}, b.member_edges)
        for comp in comps:
            inside = [x for x in node_set if x in comp]
            for x, y in combinations(inside, 2):
                edges.add((x, y))
    # component partition of the resulting graph
    parent = {x: x for x in node_set}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    blocks: dict[int, list[int]] = {}
    for x in node_set:
        blocks.setdefault(find(x), []).append(x)
    partition = VertexPartition.from_blocks(blocks.values())
    return ConnectivityGraph(
        v0=min(v0, v1),
        v1=max(v0, v1),
        d=d,
        node_set=tuple(node_set),
        edges=tuple(sorted(edges)),
        partition=partition,
    )


def _subgraph_components(graph: Graph, vertices: set[int], edge_ids) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(vertices):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for w, _, e in graph.adjacency(u):
                if w in vertices and w not in seen and e in edge_ids:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def subdivide(graph: Graph, k: int) -> Graph:
    """Replace every edge by a path of ``k + 1`` unit edges.

    Requires unit weights.  Original vertices keep their ids; the
    subdivision vertices of edge ``e`` are ``n + e*k .. n + e*k + k - 1``,
    ordered from the endpoint with the smaller id, so callers can address
    them arithmetically.
    """
    if k < 1:
        raise InputError(f"subdivision count must be >= 1, got {k}")
    if graph.edge_count and int(graph.edge_array[:, 2].max()) != 1:
        raise InputError("subdivision is defined for unit-weight graphs")
    n = graph.vertex_count
    edges = []
    for e in range(graph.edge_count):
        u, v, _ = graph.edge_endpoints(e)
        chain = [u] + [n + e * k + j for j in range(k)] + [v]
        edges.extend((chain[i], chain[i + 1], 1) for i in range(len(chain) - 1))
    labels = list(graph.labels) + [
        f"{graph.labels[graph.edge_endpoints(e)[0]]}~{graph.labels[graph.edge_endpoints(e)[1]]}~{j}"
        for e in range(graph.edge_count)
        for j in range(k)
    ]
    return Graph.from_edge_list(edges, vertex_count=n + graph.edge_count * k, labels=labels)


def global_cutvertices(graph: Graph) -> set[int]:
    """Classical articulation points by single-vertex deletion."""
    _guard(graph)
    out = set()
    base = components(graph)
    for v in range(graph.vertex_count):
        comp = next(b for b in base.blocks if v in b)
        rest = set(comp) - {v}
        if not rest:
            continue
        if len(_induced_components(graph, rest)) >= 2:
            out.add(v)
    return out


def global_2cuts(graph: Graph) -> set[tuple[int, int]]:
    """Unordered pairs whose joint removal disconnects a connected graph."""
    _guard(graph)
    if len(components(graph)) != 1:
        raise PreconditionError("global 2-cut enumeration expects a connected graph")
    out = set()
    for u, v in combinations(range(graph.vertex_count), 2):
        rest = set(range(graph.vertex_count)) - {u, v}
        if len(_induced_components(graph, rest)) >= 2:
            out.add((u, v))
    return out


def _induced_components(graph: Graph, vertices: set[int]) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(vertices):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for w in graph.neighbors(u):
                w = int(w)
                if w in vertices and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def biconnected_components(graph: Graph) -> list[frozenset[int]]:
    """Vertex sets of the classical biconnected components (bridges included)."""
    _guard(graph)
    n = graph.vertex_count
    disc = [-1] * n
    low = [0] * n
    timer = 0
    stack: list[tuple[int, int]] = []
    blocks: list[frozenset[int]] = []

    def flush(u, w):
        verts = set()
        while stack:
            a, b = stack.pop()
            verts.update((a, b))
            if (a, b) == (u, w):
                break
        blocks.append(frozenset(verts))

    def dfs(root):
        nonlocal timer
        work = [(root, -1, iter([int(x) for x in graph.neighbors(root)]))]
        disc[root] = low[root] = timer
        timer += 1
        while work:
            u, parent, it = work[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    work.append((w, u, iter([int(x) for x in graph.neighbors(w)])))
                    advanced = True
                    break
                elif w != parent and disc[w] < disc[u]:
                    stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    flush(p, u)

    for v in range(n):
        if disc[v] == -1:
            dfs(v)
    return blocks


def simple_cycles_up_to_weight(graph: Graph, d: int) -> list[tuple[int, ...]]:
    """All simple cycles of total weight at most ``d``.

    Each cycle appears once, as a vertex tuple starting at its smallest
    vertex with the smaller of the two neighbours second.
    """
    _guard(graph, None)
    cycles = []
    n = graph.vertex_count

    def extend(path: list[int], weight: int, start: int):
        u = path[-1]
        for w, wt_, _ in graph.adjacency(u):
            nw = weight + wt_
            if nw > d:
                continue
            if w == start and len(path) >= 3:
                if path[1] < path[-1]:  # canonical orientation only
                    cycles.append(tuple(path))
                continue
            if w <= start or w in path_set:
                continue
            path.append(w)
            path_set.add(w)
            extend(path, nw, start)
            path_set.remove(w)
            path.pop()

    for start in range(n):
        path_set: set[int] = set()
        extend([start], 0, start)
    return cycles


def crossing_bruteforce(graph: Graph, d: int, x_pair, y_pair) -> bool:
    """Whether separator ``X`` crosses ``Y``: some cycle of weight at most
    ``d`` contains both pairs and alternates between them around the cycle."""
    x0, x1 = sorted(x_pair)
    y0, y1 = sorted(y_pair)
    if {x0, x1} & {y0, y1}:
        return False
    for cyc in simple_cycles_up_to_weight(graph, d):
        pos = {v: i for i, v in enumerate(cyc)}
        if not all(v in pos for v in (x0, x1, y0, y1)):
            continue
        k = len(cyc)
        a, b = pos[x0], pos[x1]
        arc = set()
        i = (a + 1) % k
        while i != b:
            arc.add(cyc[i])
            i = (i + 1) % k
        if (y0 in arc) != (y1 in arc):
            return True
    return False
