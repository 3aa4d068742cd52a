"""Command-line front end.

Subcommands wire the pipeline end to end::

    localsep preprocess  --nodes n.csv --edges e.csv --scale 1000 --out pre
    localsep onesep      --edges pre.edges.csv --d 17 --out cuts
    localsep twosep      --edges pre.edges.csv --d 17 --out seps
    localsep decompose   --mode 1sep --edges pre.edges.csv --d 17 --out deco
    localsep sweep       --edges pre.edges.csv --d-values 5,11,17,23 --out sweep
    localsep extract-bag --mode 1sep --edges pre.edges.csv --d 17 --bag-id 3 --out bag3

Every subcommand takes ``--out STEM`` and writes ``STEM.<kind>`` files plus
``STEM.meta.json`` with input digests, parameters and per-phase wall
times.  Outputs are deterministic for fixed inputs and flags, independent
of ``--jobs``; only the timing fields of the metadata vary between runs.

Exit codes: 0 on success, 1 for input errors (bad flags, unreadable or
malformed files), 2 for precondition and data-integrity errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .cutvertices import find_local_cutvertices
from .decomposition import (
    NodeKind,
    build_from_2separators,
    build_from_cutvertices,
    stats,
    suppress_degree_two_nodes,
)
from .errors import DataIntegrityError, InputError, PreconditionError
from .graph import Graph, induced_subgraph, max_ball_size
from .io_formats import (
    file_digest,
    load,
    write_cutvertices,
    write_dot,
    write_graph,
    write_meta,
    write_separators,
    write_sweep,
)
from .pipeline import prune_degree_one, suppress_degree_two, sweep_d
from .separators import filter_totally_nested, find_local_2separators

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2


class _Parser(argparse.ArgumentParser):
    # flag mistakes are input errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


class _Phases:
    """Wall-clock seconds per named phase, in execution order."""

    def __init__(self):
        self.entries: list[dict] = []

    def run(self, name, fn):
        t0 = time.perf_counter()
        result = fn()
        self.entries.append({"phase": name, "seconds": round(time.perf_counter() - t0, 6)})
        return result


def _add_common(parser: _Parser, with_d: bool = True) -> None:
    parser.add_argument("--edges", required=True, help="edge CSV (source,target[,weight])")
    parser.add_argument("--nodes", help="node CSV (id,x,y)")
    if with_d:
        parser.add_argument("--d", type=int, required=True, help="locality (ball diameter)")
    parser.add_argument("--scale", default="1", help="rational scale for weights (default 1)")
    parser.add_argument("--jobs", type=int, help="worker threads (default: all cores)")
    parser.add_argument("--out", required=True, help="output stem; files get STEM.<kind> names")
    parser.add_argument("--seed", type=int, help="seed for randomized test-data generation")


def _load(args, phases: _Phases) -> Graph:
    return phases.run("load", lambda: load(args.edges, args.nodes, scale=args.scale))


def _inputs_meta(args) -> dict:
    meta = {"edges": {"path": str(args.edges), "sha256": file_digest(args.edges)}}
    if args.nodes:
        meta["nodes"] = {"path": str(args.nodes), "sha256": file_digest(args.nodes)}
    return meta


def _finish_meta(args, phases: _Phases, stem: Path, *, d=None, r_statistic=None, **extra) -> None:
    from numba import get_num_threads

    write_meta(
        stem.with_name(stem.name + ".meta.json"),
        inputs=_inputs_meta(args),
        d=d,
        scale=str(args.scale),
        jobs=args.jobs,
        threads=args.jobs if args.jobs else get_num_threads(),
        seed=args.seed,
        phases=phases.entries,
        r_statistic=r_statistic,
        **extra,
    )


def _cmd_preprocess(args) -> int:
    phases = _Phases()
    graph = _load(args, phases)
    loaded = (graph.vertex_count, graph.edge_count)
    graph = phases.run("prune_degree_one", lambda: prune_degree_one(graph))
    graph = phases.run("suppress_degree_two", lambda: suppress_degree_two(graph))
    stem = Path(args.out)
    phases.run(
        "write",
        lambda: write_graph(
            graph,
            stem.with_name(stem.name + ".nodes.csv"),
            stem.with_name(stem.name + ".edges.csv"),
        ),
    )
    _finish_meta(
        args,
        phases,
        stem,
        loaded_vertices=loaded[0],
        loaded_edges=loaded[1],
        vertices=graph.vertex_count,
        edges=graph.edge_count,
    )
    return EXIT_OK


def _check_d(d: int, minimum: int) -> None:
    if d < minimum:
        raise PreconditionError(f"--d must be >= {minimum}, got {d}")


def _cmd_onesep(args) -> int:
    phases = _Phases()
    _check_d(args.d, 1)
    graph = _load(args, phases)
    cuts = phases.run("onesep", lambda: find_local_cutvertices(graph, args.d, jobs=args.jobs))
    r_stat = phases.run("r_statistic", lambda: max_ball_size(graph, args.d) if graph.vertex_count else 0)
    stem = Path(args.out)
    phases.run("write", lambda: write_cutvertices(graph, cuts, stem.with_name(stem.name + ".cutvertices.csv")))
    _finish_meta(args, phases, stem, d=args.d, r_statistic=r_stat, cutvertices=len(cuts))
    return EXIT_OK


def _cmd_twosep(args) -> int:
    phases = _Phases()
    _check_d(args.d, 2)
    graph = _load(args, phases)
    records = phases.run("twosep", lambda: find_local_2separators(graph, args.d, jobs=args.jobs))
    records = phases.run("nestedness", lambda: filter_totally_nested(records, args.d))
    r_stat = phases.run("r_statistic", lambda: max_ball_size(graph, args.d) if graph.vertex_count else 0)
    stem = Path(args.out)
    phases.run("write", lambda: write_separators(graph, records, stem.with_name(stem.name + ".separators.csv")))
    _finish_meta(
        args,
        phases,
        stem,
        d=args.d,
        r_statistic=r_stat,
        separators=len(records),
        totally_nested=sum(1 for r in records if r.nested),
    )
    return EXIT_OK


def _decomposition_for(args, graph: Graph, phases: _Phases):
    if args.mode == "1sep":
        _check_d(args.d, 1)
        cuts = phases.run("onesep", lambda: find_local_cutvertices(graph, args.d, jobs=args.jobs))
        dg = phases.run("decompose", lambda: build_from_cutvertices(graph, cuts, args.d))
    else:
        _check_d(args.d, 2)
        records = phases.run("twosep", lambda: find_local_2separators(graph, args.d, jobs=args.jobs))
        nested = [r for r in phases.run("nestedness", lambda: filter_totally_nested(records, args.d)) if r.nested]
        dg = phases.run("decompose", lambda: build_from_2separators(graph, nested, args.d))
    return dg


def _cmd_decompose(args) -> int:
    phases = _Phases()
    graph = _load(args, phases)
    dg = _decomposition_for(args, graph, phases)
    simplified = phases.run("suppress_degree_two_nodes", lambda: suppress_degree_two_nodes(dg))
    stem = Path(args.out)
    phases.run("write", lambda: write_dot(dg, graph, stem.with_name(stem.name + ".decomposition.dot")))
    phases.run("write_simplified", lambda: write_dot(simplified, graph, stem.with_name(stem.name + ".simplified.dot")))
    full, simple = stats(dg), stats(simplified)
    _finish_meta(
        args,
        phases,
        stem,
        d=args.d,
        r_statistic=max_ball_size(graph, args.d) if graph.vertex_count else 0,
        mode=args.mode,
        nodes=full.node_count,
        edges=full.edge_count,
        largest_bag=full.largest_bag,
        simplified_nodes=simple.node_count,
        simplified_edges=simple.edge_count,
    )
    return EXIT_OK


def _cmd_sweep(args) -> int:
    phases = _Phases()
    try:
        d_values = [int(tok) for tok in args.d_values.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"--d-values must be comma-separated integers, got {args.d_values!r}") from exc
    if not d_values:
        raise InputError("--d-values is empty")
    for d in d_values:
        _check_d(d, 1)
    graph = _load(args, phases)
    rows = phases.run("sweep", lambda: sweep_d(graph, d_values, jobs=args.jobs))
    stem = Path(args.out)
    phases.run("write", lambda: write_sweep(rows, stem.with_name(stem.name + ".sweep.csv")))
    _finish_meta(args, phases, stem, d=None, d_values=d_values)
    return EXIT_OK


def _cmd_extract_bag(args) -> int:
    phases = _Phases()
    graph = _load(args, phases)
    dg = _decomposition_for(args, graph, phases)
    bags = [node for node in dg.nodes if node.kind is NodeKind.BAG]
    if not 0 <= args.bag_id < len(bags):
        raise InputError(f"--bag-id {args.bag_id} out of range; decomposition has {len(bags)} bags")
    sub = induced_subgraph(graph, bags[args.bag_id].vertices)
    stem = Path(args.out)
    phases.run(
        "write",
        lambda: write_graph(
            sub,
            stem.with_name(stem.name + ".nodes.csv"),
            stem.with_name(stem.name + ".edges.csv"),
        ),
    )
    _finish_meta(
        args,
        phases,
        stem,
        d=args.d,
        mode=args.mode,
        bag_id=args.bag_id,
        bag_vertices=sub.vertex_count,
        bag_edges=sub.edge_count,
    )
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="localsep", description="local separators and graph decompositions")
    parser.add_argument("--version", action="version", version=f"localsep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("preprocess", help="scale weights, prune degree-1, suppress degree-2")
    _add_common(p, with_d=False)
    p.set_defaults(func=_cmd_preprocess)

    p = sub.add_parser("onesep", help="find local cutvertices")
    _add_common(p)
    p.set_defaults(func=_cmd_onesep)

    p = sub.add_parser("twosep", help="find local 2-separators and nestedness")
    _add_common(p)
    p.set_defaults(func=_cmd_twosep)

    p = sub.add_parser("decompose", help="separators, decomposition graph, simplification, DOT")
    _add_common(p)
    p.add_argument("--mode", choices=("1sep", "2sep"), required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("sweep", help="cutvertex statistics over several localities")
    _add_common(p, with_d=False)
    p.add_argument("--d-values", required=True, help="comma-separated localities, e.g. 5,11,17,23")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("extract-bag", help="write one bag's induced subgraph for recursive analysis")
    _add_common(p)
    p.add_argument("--mode", choices=("1sep", "2sep"), required=True)
    p.add_argument("--bag-id", type=int, required=True, help="bag index as in the DOT output (b<K>)")
    p.set_defaults(func=_cmd_extract_bag)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"localsep: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, DataIntegrityError) as exc:
        print(f"localsep: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"localsep: i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
