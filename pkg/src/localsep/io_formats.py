"""Reading node/edge tables and writing every output format.

Formats
-------
* nodes CSV, header ``id,x,y`` (or bare ``id`` for graphs without
  coordinates): one row per vertex, ids are arbitrary string tokens.
* edges CSV, header ``source,target`` or ``source,target,weight``:
  weights are positive decimals; without a weight column, weights come
  from scaled node coordinates when available and default to 1 otherwise.
* 1-separator CSV: header ``vertex``, original ids, sorted.
* 2-separator CSV: header ``v0,v1,verdict,nested`` with verdict in
  ``{edge, many_components, cycle}``, rows sorted by ``(v0, v1)``.
* decomposition DOT: bags as boxes ``bag:<size>``, separators as ellipses
  labelled with their original ids, ``pos`` attributes when coordinates
  exist; node names ``b<i>``/``s<i>`` match the bag ids accepted by the
  CLI's ``extract-bag``.
* sweep CSV: header ``d,cutvertices,clusters,largest_cluster``.
* run metadata JSON: input digests, parameters, per-phase wall times and
  the maximum ball size; timings vary run to run, everything else is
  deterministic.

All writers emit ``\n`` line endings and fixed orderings, so identical
inputs and settings produce byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .decomposition import DecompositionGraph, NodeKind
from .errors import InputError
from .graph import Graph
from .pipeline import SweepRow, euclidean_weights, scaled_weight
from .separators import SeparatorRecord


def _parse_positive_fraction(text: str, what: str, where: str) -> Fraction | int:
    try:
        value = int(text)  # fast path: integral weights dominate real inputs
    except ValueError:
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: invalid {what} {text!r}") from exc
    if value <= 0:
        raise InputError(f"{where}: {what} must be positive, got {text!r}")
    return value


def _read_rows(path: Path) -> list[list[str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return [row for row in csv.reader(fh)]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def load_nodes(path: str | Path) -> tuple[list[str], np.ndarray | None]:
    """Node table: ordered id tokens and, when present, their coordinates."""
    path = Path(path)
    rows = _read_rows(path)
    if not rows:
        raise InputError(f"{path}:1: empty nodes file")
    header = [h.strip() for h in rows[0]]
    if header == ["id", "x", "y"]:
        with_coords = True
    elif header == ["id"]:
        with_coords = False
    else:
        raise InputError(f"{path}:1: nodes header must be 'id,x,y' (or bare 'id'), got {rows[0]!r}")
    ids: list[str] = []
    seen: set[str] = set()
    coords: list[tuple[float, float]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InputError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
        token = row[0].strip()
        if not token:
            raise InputError(f"{path}:{lineno}: empty node id")
        if token in seen:
            raise InputError(f"{path}:{lineno}: duplicate node id {token!r}")
        seen.add(token)
        ids.append(token)
        if with_coords:
            try:
                coords.append((float(row[1]), float(row[2])))
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: invalid coordinate in {row!r}") from exc
    return ids, (np.asarray(coords, dtype=np.float64) if with_coords else None)


def load(
    edges_path: str | Path,
    nodes_path: str | Path | None = None,
    scale: Fraction | float | int | str = 1,
) -> Graph:
    """Load a graph from an edge CSV, optionally with a node table.

    With an explicit weight column, weights are ``round(scale * weight)``
    (half-up, exact over rationals), clamped to 1.  Without it, weights
    come from scaled coordinates when the node table has them, else 1.
    Malformed rows, unknown endpoints, loops and parallel edges are
    reported with their line number.
    """
    scale = Fraction(str(scale)) if not isinstance(scale, Fraction) else scale
    if scale <= 0:
        raise InputError(f"scale must be positive, got {scale}")
    edges_path = Path(edges_path)
    rows = _read_rows(edges_path)
    if not rows:
        raise InputError(f"{edges_path}:1: empty edges file")
    header = [h.strip() for h in rows[0]]
    if header == ["source", "target"]:
        has_weight = False
    elif header == ["source", "target", "weight"]:
        has_weight = True
    else:
        raise InputError(
            f"{edges_path}:1: edges header must be 'source,target[,weight]', got {rows[0]!r}"
        )

    if nodes_path is not None:
        ids, coords = load_nodes(nodes_path)
        index = {token: i for i, token in enumerate(ids)}
        grow = False
    else:
        ids, coords, index, grow = [], None, {}, True

    def vertex(token: str, lineno: int) -> int:
        token = token.strip()
        if not token:
            raise InputError(f"{edges_path}:{lineno}: empty endpoint id")
        if token not in index:
            if not grow:
                raise InputError(f"{edges_path}:{lineno}: unknown node id {token!r}")
            index[token] = len(ids)
            ids.append(token)
        return index[token]

    pairs: list[tuple[int, int]] = []
    weights: list[Fraction | None] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InputError(f"{edges_path}:{lineno}: expected {len(header)} fields, got {len(row)}")
        u = vertex(row[0], lineno)
        v = vertex(row[1], lineno)
        if u == v:
            raise InputError(f"{edges_path}:{lineno}: loop at {row[0].strip()!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(
                f"{edges_path}:{lineno}: parallel edge {row[0].strip()!r},{row[1].strip()!r} "
                f"(first seen on line {seen[key]})"
            )
        seen[key] = lineno
        pairs.append((u, v))
        weights.append(
            _parse_positive_fraction(row[2].strip(), "weight", f"{edges_path}:{lineno}")
            if has_weight
            else None
        )

    n = len(ids)
    if has_weight:
        triples = [(u, v, scaled_weight(w, scale)) for (u, v), w in zip(pairs, weights)]
        return Graph.from_edge_list(triples, vertex_count=n, labels=ids, coords=coords)
    if coords is not None:
        return euclidean_weights(coords, pairs, scale=scale, labels=ids)
    return Graph.from_edge_list(
        [(u, v, 1) for u, v in pairs], vertex_count=n, labels=ids, coords=coords
    )


def write_graph(graph: Graph, nodes_path: str | Path, edges_path: str | Path) -> None:
    """Write a graph back out as node and edge CSVs (weights as integers)."""
    with open(nodes_path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        if graph.coords is not None:
            out.writerow(["id", "x", "y"])
            for v in range(graph.vertex_count):
                out.writerow([graph.labels[v], repr(float(graph.coords[v, 0])), repr(float(graph.coords[v, 1]))])
        else:
            out.writerow(["id"])
            for v in range(graph.vertex_count):
                out.writerow([graph.labels[v]])
    with open(edges_path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["source", "target", "weight"])
        for u, v, w in graph.edge_list():
            out.writerow([graph.labels[u], graph.labels[v], w])


def write_cutvertices(graph: Graph, cutvertices: Iterable[int], path: str | Path) -> None:
    """1-separator CSV: original ids under a ``vertex`` header, sorted."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["vertex"])
        for label in sorted(graph.labels[v] for v in cutvertices):
            out.writerow([label])


def write_separators(graph: Graph, records: Sequence[SeparatorRecord], path: str | Path) -> None:
    """2-separator CSV: ``v0,v1,verdict,nested`` sorted by original id pair."""
    rows = []
    for rec in records:
        a, b = sorted((graph.labels[rec.v0], graph.labels[rec.v1]))
        rows.append([a, b, rec.cycle_data.verdict.value, "true" if rec.nested else "false"])
    rows.sort(key=lambda r: (r[0], r[1]))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["v0", "v1", "verdict", "nested"])
        out.writerows(rows)


def write_sweep(rows: Sequence[SweepRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["d", "cutvertices", "clusters", "largest_cluster"])
        for row in rows:
            out.writerow([row.d, row.cutvertices, row.clusters, row.largest_cluster])


def write_dot(dg: DecompositionGraph, graph: Graph, path: str | Path) -> None:
    """Decomposition graph in DOT, deterministic node ordering.

    Bag nodes are named ``b<i>`` in bag order; separator nodes ``s<i>``.
    ``pos`` attributes carry centroids (input units) when coordinates
    exist; render with a layout that honours them or let dot relayout.
    """
    bag_ids: dict[int, str] = {}
    sep_ids: dict[int, str] = {}
    for idx, node in enumerate(dg.nodes):
        if node.kind is NodeKind.BAG:
            bag_ids[idx] = f"b{len(bag_ids)}"
        else:
            sep_ids[idx] = f"s{len(sep_ids)}"
    names = {**bag_ids, **sep_ids}
    lines = ["graph decomposition {"]
    for idx, node in enumerate(dg.nodes):
        attrs = []
        if node.kind is NodeKind.BAG:
            attrs.append("shape=box")
            attrs.append(f'label="bag:{node.size}"')
        else:
            attrs.append("shape=ellipse")
            label = ",".join(graph.labels[v] for v in node.vertices).replace('"', '\\"')
            attrs.append(f'label="{label}"')
        if node.centroid is not None:
            attrs.append(f'pos="{node.centroid[0]:.3f},{node.centroid[1]:.3f}"')
        lines.append(f"  {names[idx]} [{', '.join(attrs)}];")
    for a, b, mult in sorted(dg.edges):
        suffix = f' [label="x{mult}"]' if mult > 1 else ""
        lines.append(f"  {names[a]} -- {names[b]}{suffix};")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def file_digest(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def write_meta(path: str | Path, **fields) -> None:
    """Run metadata JSON with stable key order."""
    payload = {"tool": "localsep", "version": __version__}
    payload.update(fields)
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
