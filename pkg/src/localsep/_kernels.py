"""Compiled batch kernels for the per-vertex and per-pair ball searches.

Everything here operates on the flat CSR arrays of a :class:`~localsep.graph.Graph`
inside numba-compiled loops.  The vertex range is split into chunks and the
chunks run in parallel; every chunk owns its scratch arrays and writes to
disjoint output slices, so results are bit-identical for any worker count.

Stamp arrays replace per-vertex clearing: an entry is valid only when its
stamp equals the token of the current operation, which keeps the per-ball
cost proportional to the ball size instead of the graph size.
"""

from __future__ import annotations

import warnings
from contextlib import contextmanager

import numpy as np

from numba import get_num_threads, njit, prange, set_num_threads
from numba.core.errors import NumbaWarning

# stale-TBB detection is environment noise; numba falls back to another layer
warnings.filterwarnings("ignore", message=".*TBB.*", category=NumbaWarning)

from .graph import Graph


@contextmanager
def thread_limit(jobs: int | None):
    """Temporarily cap the numba worker count; ``None`` keeps the default."""
    if jobs is None:
        yield
        return
    old = get_num_threads()
    set_num_threads(max(1, min(int(jobs), old if old > 0 else 1)))
    try:
        yield
    finally:
        set_num_threads(old)


def _chunk_bounds(n: int) -> np.ndarray:
    chunks = max(1, min(n, get_num_threads() * 8))
    return np.linspace(0, n, chunks + 1).astype(np.int64)


@njit(cache=True)
def _heap_push(heap_d, heap_v, hn, d, v):
    if hn >= heap_d.shape[0]:
        grown_d = np.empty(heap_d.shape[0] * 2, np.int64)
        grown_v = np.empty(heap_v.shape[0] * 2, np.int64)
        grown_d[:hn] = heap_d[:hn]
        grown_v[:hn] = heap_v[:hn]
        heap_d, heap_v = grown_d, grown_v
    i = hn
    heap_d[i] = d
    heap_v[i] = v
    while i > 0:
        p = (i - 1) >> 1
        if heap_d[p] <= heap_d[i]:
            break
        heap_d[i], heap_d[p] = heap_d[p], heap_d[i]
        heap_v[i], heap_v[p] = heap_v[p], heap_v[i]
        i = p
    return heap_d, heap_v, hn + 1


@njit(cache=True)
def _dijkstra_capped(
    indptr, nbr, wt, src, limit, dist, dstamp, sstamp, token, members, heap_d, heap_v
):
    """Truncated Dijkstra from ``src``; collects settled vertices into ``members``.

    On return ``dist[u]`` is valid iff ``dstamp[u] == token``; every valid
    entry is an exact distance ``<= limit``.  Returns the member count and
    the (possibly reallocated) heap arrays.
    """
    dist[src] = 0
    dstamp[src] = token
    heap_d[0] = 0
    heap_v[0] = src
    hn = 1
    count = 0
    while hn > 0:
        du = heap_d[0]
        u = heap_v[0]
        hn -= 1
        heap_d[0] = heap_d[hn]
        heap_v[0] = heap_v[hn]
        i = 0
        while True:
            l = 2 * i + 1
            r = l + 1
            s = i
            if l < hn and heap_d[l] < heap_d[s]:
                s = l
            if r < hn and heap_d[r] < heap_d[s]:
                s = r
            if s == i:
                break
            heap_d[i], heap_d[s] = heap_d[s], heap_d[i]
            heap_v[i], heap_v[s] = heap_v[s], heap_v[i]
            i = s
        if sstamp[u] == token:
            continue
        sstamp[u] = token
        members[count] = u
        count += 1
        for k in range(indptr[u], indptr[u + 1]):
            nd = du + wt[k]
            if nd > limit:
                continue
            w = nbr[k]
            if dstamp[w] != token or nd < dist[w]:
                dist[w] = nd
                dstamp[w] = token
                heap_d, heap_v, hn = _heap_push(heap_d, heap_v, hn, nd, w)
    return count, heap_d, heap_v


@njit(cache=True)
def _punctured_component_count(
    indptr, nbr, wt, d, v0, v1, dist, dstamp, token, members, count, bstamp, btoken, stack, cap
):
    """Number of components of the ball minus ``{v0, v1}``, up to ``cap``.

    Membership and edges are given by the ball predicates over ``dist``;
    ``v1 < 0`` punctures at ``v0`` only.
    """
    comp = 0
    for idx in range(count):
        u = members[idx]
        if u == v0 or u == v1:
            continue
        if bstamp[u] == btoken:
            continue
        comp += 1
        if comp >= cap:
            return comp
        bstamp[u] = btoken
        stack[0] = u
        sp = 1
        while sp > 0:
            sp -= 1
            x = stack[sp]
            dx = dist[x]
            for k in range(indptr[x], indptr[x + 1]):
                w = nbr[k]
                if w == v0 or w == v1:
                    continue
                if dstamp[w] != token or bstamp[w] == btoken:
                    continue
                if dx + wt[k] + dist[w] > d:
                    continue
                bstamp[w] = btoken
                stack[sp] = w
                sp += 1
    return comp


@njit(cache=True)
def _ball_edge_count(indptr, nbr, wt, d, dist, dstamp, token, members, count):
    edges = 0
    for idx in range(count):
        u = members[idx]
        du = dist[u]
        for k in range(indptr[u], indptr[u + 1]):
            w = nbr[k]
            if w <= u or dstamp[w] != token:
                continue
            if du + wt[k] + dist[w] <= d:
                edges += 1
    return edges


@njit(cache=True, parallel=True)
def _cutvertex_scan(indptr, nbr, wt, n, d, bounds, flags, sizes):
    half = d // 2
    for c in prange(bounds.shape[0] - 1):
        dist = np.empty(n, np.int64)
        dstamp = np.zeros(n, np.int64)
        sstamp = np.zeros(n, np.int64)
        bstamp = np.zeros(n, np.int64)
        members = np.empty(n, np.int64)
        stack = np.empty(n, np.int64)
        heap_d = np.empty(256, np.int64)
        heap_v = np.empty(256, np.int64)
        token = 0
        for v in range(bounds[c], bounds[c + 1]):
            token += 1
            count, heap_d, heap_v = _dijkstra_capped(
                indptr, nbr, wt, v, half, dist, dstamp, sstamp, token, members, heap_d, heap_v
            )
            sizes[v] = count + _ball_edge_count(
                indptr, nbr, wt, d, dist, dstamp, token, members, count
            )
            comp = _punctured_component_count(
                indptr, nbr, wt, d, v, -1, dist, dstamp, token, members, count, bstamp, token, stack, 2
            )
            flags[v] = 1 if comp >= 2 else 0


@njit(cache=True, parallel=True)
def _ball_size_scan(indptr, nbr, wt, n, d, bounds, sizes):
    half = d // 2
    for c in prange(bounds.shape[0] - 1):
        dist = np.empty(n, np.int64)
        dstamp = np.zeros(n, np.int64)
        sstamp = np.zeros(n, np.int64)
        members = np.empty(n, np.int64)
        heap_d = np.empty(256, np.int64)
        heap_v = np.empty(256, np.int64)
        token = 0
        for v in range(bounds[c], bounds[c + 1]):
            token += 1
            count, heap_d, heap_v = _dijkstra_capped(
                indptr, nbr, wt, v, half, dist, dstamp, sstamp, token, members, heap_d, heap_v
            )
            sizes[v] = count + _ball_edge_count(
                indptr, nbr, wt, d, dist, dstamp, token, members, count
            )


@njit(cache=True, parallel=True)
def _candidate_count_scan(indptr, nbr, wt, n, d, bounds, counts):
    half = d // 2
    for c in prange(bounds.shape[0] - 1):
        dist = np.empty(n, np.int64)
        dstamp = np.zeros(n, np.int64)
        sstamp = np.zeros(n, np.int64)
        members = np.empty(n, np.int64)
        heap_d = np.empty(256, np.int64)
        heap_v = np.empty(256, np.int64)
        token = 0
        for v in range(bounds[c], bounds[c + 1]):
            token += 1
            count, heap_d, heap_v = _dijkstra_capped(
                indptr, nbr, wt, v, half, dist, dstamp, sstamp, token, members, heap_d, heap_v
            )
            above = 0
            for i in range(count):
                if members[i] > v:
                    above += 1
            counts[v] = above


@njit(cache=True)
def _uf_find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


@njit(cache=True)
def _union_ball_components(
    indptr, nbr, wt, d, v0, v1, dist, dstamp, token,
    members, count, bstamp, btoken, stack, nstamp, nidx, ntoken, parent,
):
    """Union the boundary vertices reachable inside one punctured ball.

    Walks the components of the ball minus ``{v0, v1}`` and joins, per
    component, all encountered vertices of the candidate boundary set
    (those stamped with ``ntoken``).
    """
    for idx in range(count):
        u = members[idx]
        if u == v0 or u == v1 or bstamp[u] == btoken:
            continue
        anchor = -1
        bstamp[u] = btoken
        stack[0] = u
        sp = 1
        while sp > 0:
            sp -= 1
            x = stack[sp]
            if nstamp[x] == ntoken:
                if anchor < 0:
                    anchor = nidx[x]
                else:
                    ra = _uf_find(parent, anchor)
                    rb = _uf_find(parent, nidx[x])
                    if ra != rb:
                        parent[rb] = ra
            dx = dist[x]
            for k in range(indptr[x], indptr[x + 1]):
                w = nbr[k]
                if w == v0 or w == v1:
                    continue
                if dstamp[w] != token or bstamp[w] == btoken:
                    continue
                if dx + wt[k] + dist[w] > d:
                    continue
                bstamp[w] = btoken
                stack[sp] = w
                sp += 1


@njit(cache=True, parallel=True)
def _pair_scan(indptr, nbr, wt, n, d, bounds, offsets, found, out_v1):
    half = d // 2
    for c in prange(bounds.shape[0] - 1):
        dist0 = np.empty(n, np.int64)
        dstamp0 = np.zeros(n, np.int64)
        dist1 = np.empty(n, np.int64)
        dstamp1 = np.zeros(n, np.int64)
        sstamp = np.zeros(n, np.int64)
        bstamp = np.zeros(n, np.int64)
        nstamp = np.zeros(n, np.int64)
        nidx = np.empty(n, np.int64)
        members0 = np.empty(n, np.int64)
        members1 = np.empty(n, np.int64)
        stack = np.empty(n, np.int64)
        parent = np.empty(64, np.int64)
        heap_d = np.empty(256, np.int64)
        heap_v = np.empty(256, np.int64)
        token = 0
        for v0 in range(bounds[c], bounds[c + 1]):
            token += 1
            tok0 = token
            count0, heap_d, heap_v = _dijkstra_capped(
                indptr, nbr, wt, v0, half, dist0, dstamp0, sstamp, tok0, members0, heap_d, heap_v
            )
            members0[:count0].sort()
            hits = 0
            for idx0 in range(count0):
                v1 = members0[idx0]
                if v1 <= v0:
                    continue
                # boundary set N({v0, v1}): neighbours of the pair, pair excluded
                token += 1
                ntoken = token
                nsize = 0
                for root in (v0, v1):
                    for k in range(indptr[root], indptr[root + 1]):
                        w = nbr[k]
                        if w == v0 or w == v1 or nstamp[w] == ntoken:
                            continue
                        nstamp[w] = ntoken
                        nidx[w] = nsize
                        nsize += 1
                if nsize <= 1:
                    continue
                if nsize > parent.shape[0]:
                    parent = np.empty(max(nsize, parent.shape[0] * 2), np.int64)
                for i in range(nsize):
                    parent[i] = i
                # components of ball(v0) minus the pair
                token += 1
                _union_ball_components(
                    indptr, nbr, wt, d, v0, v1, dist0, dstamp0, tok0,
                    members0, count0, bstamp, token, stack, nstamp, nidx, ntoken, parent,
                )
                # components of ball(v1) minus the pair
                token += 1
                tok1 = token
                count1, heap_d, heap_v = _dijkstra_capped(
                    indptr, nbr, wt, v1, half, dist1, dstamp1, sstamp, tok1, members1, heap_d, heap_v
                )
                token += 1
                _union_ball_components(
                    indptr, nbr, wt, d, v0, v1, dist1, dstamp1, tok1,
                    members1, count1, bstamp, token, stack, nstamp, nidx, ntoken, parent,
                )
                roots = 0
                for i in range(nsize):
                    if _uf_find(parent, i) == i:
                        roots += 1
                if roots >= 2:
                    out_v1[offsets[v0] + hits] = v1
                    hits += 1
            found[v0] = hits


@njit(cache=True)
def _compact_pairs(offsets, found, out_v1, pairs):
    k = 0
    for v0 in range(found.shape[0]):
        for j in range(found[v0]):
            pairs[k, 0] = v0
            pairs[k, 1] = out_v1[offsets[v0] + j]
            k += 1


def cutvertex_scan(graph: Graph, d: int, jobs: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per-vertex local-cutvertex flags and ball sizes at diameter ``d``."""
    n = graph.vertex_count
    flags = np.zeros(n, np.int64)
    sizes = np.zeros(n, np.int64)
    if n == 0:
        return flags, sizes
    with thread_limit(jobs):
        bounds = _chunk_bounds(n)
        _cutvertex_scan(graph.indptr, graph.nbr, graph.wt, n, d, bounds, flags, sizes)
    return flags, sizes


def ball_sizes(graph: Graph, d: int, jobs: int | None = None) -> np.ndarray:
    """Size (vertices plus edges) of the ball of diameter ``d`` at every vertex."""
    n = graph.vertex_count
    sizes = np.zeros(n, np.int64)
    if n == 0:
        return sizes
    with thread_limit(jobs):
        bounds = _chunk_bounds(n)
        _ball_size_scan(graph.indptr, graph.nbr, graph.wt, n, d, bounds, sizes)
    return sizes


def separator_pair_scan(graph: Graph, d: int, jobs: int | None = None) -> np.ndarray:
    """All pairs ``(v0, v1)`` with ``v0 < v1`` whose connectivity graph is
    disconnected, as an ``(k, 2)`` array sorted lexicographically."""
    n = graph.vertex_count
    if n == 0:
        return np.empty((0, 2), np.int64)
    with thread_limit(jobs):
        bounds = _chunk_bounds(n)
        counts = np.zeros(n, np.int64)
        _candidate_count_scan(graph.indptr, graph.nbr, graph.wt, n, d, bounds, counts)
        offsets = np.zeros(n + 1, np.int64)
        np.cumsum(counts, out=offsets[1:])
        found = np.zeros(n, np.int64)
        out_v1 = np.empty(int(offsets[-1]), np.int64)
        _pair_scan(graph.indptr, graph.nbr, graph.wt, n, d, bounds, offsets, found, out_v1)
    total = int(found.sum())
    pairs = np.empty((total, 2), np.int64)
    _compact_pairs(offsets, found, out_v1, pairs)
    return pairs


def warmup() -> None:
    """Force compilation of all kernels on a toy instance."""
    g = Graph.from_edge_list([(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 2)])
    cutvertex_scan(g, 4)
    ball_sizes(g, 4)
    separator_pair_scan(g, 4)
