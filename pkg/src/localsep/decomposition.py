"""Bipartite decomposition graphs from local separators, and postprocessing.

A decomposition graph has two node kinds: *bag* nodes carrying vertex sets
of the underlying graph and *separator* nodes carrying one cutvertex or one
2-separator pair.  Construction starts from the connected components left
after deleting all separator vertices, plus the leftover edges whose both
endpoints are separator vertices, and then merges those pieces whenever a
separator fails to split them locally:

* around a cutvertex ``v``, two pieces merge when they touch a common
  component of ``ball(v) - v``;
* around a pair ``{a, b}``, two pieces merge when they touch a common
  block of the pair's connectivity-graph partition.

In the saturated regime (``d`` at least ``2*diameter + max weight``) this
merging makes the cutvertex decomposition coincide with the classical
block-cut tree; at small ``d`` pieces that are only globally, not locally,
connected stay apart and the decomposition graph can contain genuine
cycles.

Degree-two separator nodes are redundant for the picture of the large
scale structure, so :func:`suppress_degree_two_nodes` splices them out,
joining their two bags directly; parallel bag-bag edges produced this way
are merged and the multiplicity retained on the edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .graph import Graph, ball, ball_components, components
from .separators import SeparatorRecord, connectivity_graph


class NodeKind(Enum):
    BAG = "bag"
    SEPARATOR = "separator"


@dataclass(frozen=True)
class DecompositionNode:
    kind: NodeKind
    vertices: tuple[int, ...]
    centroid: tuple[float, float] | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass
class DecompositionGraph:
    """Nodes, incidences and bookkeeping of one decomposition.

    ``edges`` holds ``(node_a, node_b, multiplicity)`` with ``a < b``;
    before suppression the graph is bipartite (every edge joins a bag to a
    separator) and all multiplicities are 1.
    """

    nodes: list[DecompositionNode] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    simplified: bool = False

    @property
    def bag_indices(self) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.kind is NodeKind.BAG]

    @property
    def separator_indices(self) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.kind is NodeKind.SEPARATOR]

    def degrees(self) -> list[int]:
        deg = [0] * len(self.nodes)
        for a, b, mult in self.edges:
            deg[a] += mult
            deg[b] += mult
        return deg

    def is_bipartite_bag_separator(self) -> bool:
        return all(
            {self.nodes[a].kind, self.nodes[b].kind} == {NodeKind.BAG, NodeKind.SEPARATOR}
            for a, b, _ in self.edges
        )


@dataclass(frozen=True)
class DecompositionStats:
    node_count: int
    edge_count: int
    bag_count: int
    separator_count: int
    largest_bag: int
    bag_size_histogram: dict[int, int]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _centroid(graph: Graph, vertices) -> tuple[float, float] | None:
    if graph.coords is None or not len(vertices):
        return None
    pts = graph.coords[list(vertices)]
    return (float(pts[:, 0].mean()), float(pts[:, 1].mean()))


def build_from_cutvertices(graph: Graph, cuts, d: int) -> DecompositionGraph:
    """Adhesion-one decomposition graph from the local cutvertices at ``d``.

    Separator nodes carry one cutvertex each.  Pieces are the components
    of ``G`` minus the cutvertices plus one two-vertex piece per edge
    joining two cutvertices; pieces merge when some cutvertex fails to
    separate them inside its own ball.  A separator is incident to a bag
    when the cutvertex belongs to the bag or neighbours one of its
    non-separator vertices.
    """
    cut_list = sorted(set(int(c) for c in cuts))
    cut_set = set(cut_list)
    for c in cut_list:
        graph.check_vertex(c)

    pieces: list[tuple[int, ...]] = [tuple(b) for b in components(graph, cut_set).blocks]
    piece_of: dict[int, int] = {}
    for i, piece in enumerate(pieces):
        for v in piece:
            piece_of[v] = i
    edge_piece_index: dict[tuple[int, int], int] = {}
    for u, v, _ in graph.edge_list():
        if u in cut_set and v in cut_set:
            edge_piece_index[(u, v)] = len(pieces)
            pieces.append((u, v))

    uf = _UnionFind(len(pieces))
    for c in cut_list:
        parts = ball_components(graph, ball(graph, c, d), exclude={c})
        part_of = {v: i for i, part in enumerate(parts) for v in part}
        anchor: dict[int, int] = {}
        for u, _, _ in graph.adjacency(c):
            if u in cut_set:
                piece = edge_piece_index[(min(c, u), max(c, u))]
            else:
                piece = piece_of[u]
            part = part_of.get(u)
            if part is None:
                continue  # neighbour outside the ball: no local evidence
            if part in anchor:
                uf.union(anchor[part], piece)
            else:
                anchor[part] = piece

    grouped: dict[int, set[int]] = {}
    for i, piece in enumerate(pieces):
        grouped.setdefault(uf.find(i), set()).update(piece)
    bag_sets = sorted(tuple(sorted(s)) for s in grouped.values())

    dg = DecompositionGraph()
    for verts in bag_sets:
        dg.nodes.append(DecompositionNode(NodeKind.BAG, verts, _centroid(graph, verts)))
    sep_pos = {}
    for c in cut_list:
        sep_pos[c] = len(dg.nodes)
        dg.nodes.append(DecompositionNode(NodeKind.SEPARATOR, (c,), _centroid(graph, (c,))))

    for bag_idx, verts in enumerate(bag_sets):
        incident: set[int] = set(v for v in verts if v in cut_set)
        for v in verts:
            if v in cut_set:
                continue
            for w in graph.neighbors(v):
                w = int(w)
                if w in cut_set:
                    incident.add(w)
        for c in sorted(incident):
            dg.edges.append((bag_idx, sep_pos[c], 1))
    return dg


def build_from_2separators(graph: Graph, nested: list[SeparatorRecord], d: int) -> DecompositionGraph:
    """Adhesion-two decomposition graph from totally nested 2-separators.

    Intended for graphs without local cutvertices at the same ``d`` (not
    verified here).  Separator nodes carry one pair each.  Bags come from
    the components of ``G`` minus all pair vertices, closed by every pair
    both of whose vertices neighbour the component; pieces merge when some
    pair fails to separate them in its connectivity-graph partition.
    Leftover edges joining two different pairs and covered by no bag are
    grouped per pair-of-pairs into their own bags.  A separator is
    incident to the bags it was closed into.
    """
    pairs = sorted({(rec.v0, rec.v1) for rec in nested})
    sep_vertices: set[int] = set()
    for a, b in pairs:
        graph.check_vertex(a)
        graph.check_vertex(b)
        sep_vertices.update((a, b))

    pieces = [tuple(b) for b in components(graph, sep_vertices).blocks]
    piece_of = {v: i for i, piece in enumerate(pieces) for v in piece}

    # pairs bounding each piece: both pair vertices must touch the piece
    piece_pairs: list[set[int]] = [set() for _ in pieces]
    neighbor_pieces: dict[int, set[int]] = {
        v: {piece_of[int(w)] for w in graph.neighbors(v) if int(w) in piece_of}
        for v in sep_vertices
    }
    for k, (a, b) in enumerate(pairs):
        for p in neighbor_pieces[a] & neighbor_pieces[b]:
            piece_pairs[p].add(k)

    uf = _UnionFind(len(pieces))
    for a, b in pairs:
        c = connectivity_graph(graph, a, b, d)
        for block in c.partition.blocks:
            anchor = None
            for x in block:
                p = piece_of.get(x)
                if p is None:
                    continue  # boundary vertex belongs to another separator
                if anchor is None:
                    anchor = p
                else:
                    uf.union(anchor, p)

    grouped: dict[int, list[int]] = {}
    for i in range(len(pieces)):
        grouped.setdefault(uf.find(i), []).append(i)
    merged = sorted(grouped.values(), key=lambda idx: min(pieces[i][0] for i in idx))

    bag_sets: list[tuple[int, ...]] = []
    bag_pairs: list[set[int]] = []
    for group in merged:
        verts: set[int] = set()
        incident: set[int] = set()
        for i in group:
            verts.update(pieces[i])
            incident.update(piece_pairs[i])
        for k in incident:
            verts.update(pairs[k])
        bag_sets.append(tuple(sorted(verts)))
        bag_pairs.append(incident)

    # leftover edges between two different pairs, not covered by any bag
    leftover: dict[tuple[int, int], set[int]] = {}
    pair_of: dict[int, list[int]] = {}
    for k, (a, b) in enumerate(pairs):
        pair_of.setdefault(a, []).append(k)
        pair_of.setdefault(b, []).append(k)
    pair_set = set(pairs)
    covered = [set(s) for s in bag_sets]
    for u, v, _ in graph.edge_list():
        if u not in sep_vertices or v not in sep_vertices:
            continue
        if (min(u, v), max(u, v)) in pair_set:
            continue  # the pair's own edge lives inside the separator
        if any(u in s and v in s for s in covered):
            continue
        ku, kv = pair_of[u][0], pair_of[v][0]
        if ku == kv:
            continue  # both endpoints in one pair: inside the separator
        key = (min(ku, kv), max(ku, kv))
        verts = leftover.setdefault(key, set())
        verts.update(pairs[key[0]])
        verts.update(pairs[key[1]])
        verts.update((u, v))
    for key in sorted(leftover):
        bag_sets.append(tuple(sorted(leftover[key])))
        bag_pairs.append(set(key))

    dg = DecompositionGraph()
    for verts in bag_sets:
        dg.nodes.append(DecompositionNode(NodeKind.BAG, verts, _centroid(graph, verts)))
    sep_base = len(dg.nodes)
    for a, b in pairs:
        dg.nodes.append(DecompositionNode(NodeKind.SEPARATOR, (a, b), _centroid(graph, (a, b))))
    for bag_idx, incident in enumerate(bag_pairs):
        for k in sorted(incident):
            dg.edges.append((bag_idx, sep_base + k, 1))
    return dg


def suppress_degree_two_nodes(dg: DecompositionGraph) -> DecompositionGraph:
    """Splice out separator nodes of degree two, joining their two bags.

    Bag nodes are never removed.  Parallel bag-bag edges created by the
    splice are merged, with the multiplicity kept on the edge; the result
    is flagged ``simplified`` and is no longer bipartite.
    """
    deg = dg.degrees()
    neighbors: dict[int, list[int]] = {}
    for a, b, mult in dg.edges:
        for _ in range(mult):
            neighbors.setdefault(a, []).append(b)
            neighbors.setdefault(b, []).append(a)
    drop = {
        i
        for i, nd in enumerate(dg.nodes)
        if nd.kind is NodeKind.SEPARATOR and deg[i] == 2 and len(set(neighbors.get(i, []))) == 2
    }
    keep = [i for i in range(len(dg.nodes)) if i not in drop]
    remap = {old: new for new, old in enumerate(keep)}

    merged: dict[tuple[int, int], int] = {}
    for a, b, mult in dg.edges:
        if a in drop or b in drop:
            continue
        key = (remap[a], remap[b]) if remap[a] < remap[b] else (remap[b], remap[a])
        merged[key] = merged.get(key, 0) + mult
    for i in sorted(drop):
        x, y = sorted(set(neighbors[i]))
        key = (remap[x], remap[y]) if remap[x] < remap[y] else (remap[y], remap[x])
        merged[key] = merged.get(key, 0) + 1

    return DecompositionGraph(
        nodes=[dg.nodes[i] for i in keep],
        edges=[(a, b, mult) for (a, b), mult in sorted(merged.items())],
        simplified=True,
    )


def stats(dg: DecompositionGraph) -> DecompositionStats:
    """Summary counts of a decomposition graph."""
    bag_sizes = [nd.size for nd in dg.nodes if nd.kind is NodeKind.BAG]
    hist: dict[int, int] = {}
    for s in bag_sizes:
        hist[s] = hist.get(s, 0) + 1
    return DecompositionStats(
        node_count=len(dg.nodes),
        edge_count=len(dg.edges),
        bag_count=len(bag_sizes),
        separator_count=len(dg.nodes) - len(bag_sizes),
        largest_bag=max(bag_sizes, default=0),
        bag_size_histogram=dict(sorted(hist.items())),
    )
