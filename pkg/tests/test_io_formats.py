import json

import pytest

from localsep import InputError, find_local_2separators, filter_totally_nested
from localsep.decomposition import build_from_2separators, suppress_degree_two_nodes
from localsep.io_formats import (
    file_digest,
    load,
    write_cutvertices,
    write_dot,
    write_graph,
    write_meta,
    write_separators,
    write_sweep,
)
from localsep.pipeline import SweepRow, prune_degree_one, suppress_degree_two
from localsep.synthetic import gnp_random_graph

from conftest import k4_ring


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


class TestLoad:
    def test_edges_only_c8(self, tmp_path):
        rows = "\n".join(f"v{i},v{(i + 1) % 8}" for i in range(8))
        path = write(tmp_path / "e.csv", "source,target\n" + rows + "\n")
        g = load(path)
        assert g.vertex_count == 8 and g.edge_count == 8
        assert all(w == 1 for _, _, w in g.edge_list())
        assert g.labels[0] == "v0"

    def test_parallel_edge_reported_with_line(self, tmp_path):
        path = write(tmp_path / "e.csv", "source,target\na,b\nb,a\n")
        with pytest.raises(InputError, match=r"e\.csv:3: parallel edge"):
            load(path)

    def test_loop_reported(self, tmp_path):
        path = write(tmp_path / "e.csv", "source,target\na,a\n")
        with pytest.raises(InputError, match=r"e\.csv:2: loop"):
            load(path)

    def test_weights_from_coordinates(self, tmp_path):
        nodes = write(tmp_path / "n.csv", "id,x,y\na,0,0\nb,3,4\n")
        edges = write(tmp_path / "e.csv", "source,target\na,b\n")
        g = load(edges, nodes, scale=1)
        assert g.edge_list() == [(0, 1, 5)]

    def test_explicit_weights_scaled_exactly(self, tmp_path):
        edges = write(tmp_path / "e.csv", "source,target,weight\na,b,0.25\n")
        g = load(edges, scale="10")
        assert g.edge_list()[0][2] == 3  # exact rational 2.5 rounds half-up

    def test_unknown_endpoint(self, tmp_path):
        nodes = write(tmp_path / "n.csv", "id,x,y\na,0,0\n")
        edges = write(tmp_path / "e.csv", "source,target\na,zz\n")
        with pytest.raises(InputError, match="unknown node id"):
            load(edges, nodes)

    def test_bad_header(self, tmp_path):
        edges = write(tmp_path / "e.csv", "from,to\na,b\n")
        with pytest.raises(InputError, match="header"):
            load(edges)

    def test_nonpositive_weight(self, tmp_path):
        edges = write(tmp_path / "e.csv", "source,target,weight\na,b,0\n")
        with pytest.raises(InputError, match="weight"):
            load(edges)

    def test_field_count_mismatch(self, tmp_path):
        edges = write(tmp_path / "e.csv", "source,target\na,b,c\n")
        with pytest.raises(InputError, match=r"e\.csv:2"):
            load(edges)


class TestRoundTrip:
    def test_preprocessed_graph_survives(self, tmp_path):
        g = suppress_degree_two(prune_degree_one(gnp_random_graph(14, 0.2, seed=4, weights=(1, 3))))
        write_graph(g, tmp_path / "n.csv", tmp_path / "e.csv")
        back = load(tmp_path / "e.csv", tmp_path / "n.csv")
        assert back.labels == g.labels
        assert back.edge_list() == g.edge_list()

    def test_round_trip_is_byte_stable(self, tmp_path):
        g = gnp_random_graph(10, 0.3, seed=1)
        write_graph(g, tmp_path / "n1.csv", tmp_path / "e1.csv")
        back = load(tmp_path / "e1.csv", tmp_path / "n1.csv")
        write_graph(back, tmp_path / "n2.csv", tmp_path / "e2.csv")
        assert file_digest(tmp_path / "e1.csv") == file_digest(tmp_path / "e2.csv")
        assert file_digest(tmp_path / "n1.csv") == file_digest(tmp_path / "n2.csv")


class TestWriters:
    def test_cutvertices_sorted_by_label(self, tmp_path):
        g = gnp_random_graph(3, 1.0, seed=0)
        out = tmp_path / "cuts.csv"
        write_cutvertices(g, [2, 0], out)
        assert out.read_text() == "vertex\n0\n2\n"

    def test_separator_csv_format(self, tmp_path, ring6):
        records = filter_totally_nested(find_local_2separators(ring6, 4), 4)
        out = tmp_path / "seps.csv"
        write_separators(ring6, records, out)
        lines = out.read_text().splitlines()
        assert lines[0] == "v0,v1,verdict,nested"
        assert lines[1] == "0,1,edge,true"
        assert len(lines) == 7

    def test_sweep_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        write_sweep([SweepRow(5, 2, 3, 4)], out)
        assert out.read_text() == "d,cutvertices,clusters,largest_cluster\n5,2,3,4\n"

    def test_dot_shapes_and_labels(self, tmp_path):
        ring = k4_ring(6)
        nested = [r for r in filter_totally_nested(find_local_2separators(ring, 4), 4) if r.nested]
        dg = build_from_2separators(ring, nested, 4)
        out = tmp_path / "d.dot"
        write_dot(dg, ring, out)
        text = out.read_text()
        assert text.count("shape=box") == 6 and text.count("shape=ellipse") == 6
        assert 'label="bag:4"' in text and 'label="0,1"' in text
        assert text.count(" -- ") == 12

    def test_dot_positions_when_coordinates(self, tmp_path):
        nodes = tmp_path / "n.csv"
        edges = tmp_path / "e.csv"
        nodes.write_text("id,x,y\na,0,0\nb,1,0\nc,1,1\n")
        edges.write_text("source,target\na,b\nb,c\nc,a\n")
        g = load(edges, nodes)
        dg = build_from_2separators(g, [], 4)
        out = tmp_path / "d.dot"
        write_dot(dg, g, out)
        assert 'pos="' in out.read_text()

    def test_simplified_dot_multiplicity_label(self, tmp_path):
        from localsep import DecompositionGraph, DecompositionNode, NodeKind

        dg = DecompositionGraph(
            nodes=[
                DecompositionNode(NodeKind.BAG, (0,)),
                DecompositionNode(NodeKind.BAG, (1,)),
                DecompositionNode(NodeKind.SEPARATOR, (2,)),
                DecompositionNode(NodeKind.SEPARATOR, (3,)),
            ],
            edges=[(0, 2, 1), (1, 2, 1), (0, 3, 1), (1, 3, 1)],
        )
        simp = suppress_degree_two_nodes(dg)
        out = tmp_path / "s.dot"
        write_dot(simp, gnp_random_graph(4, 0.0, seed=0), out)
        assert 'label="x2"' in out.read_text()

    def test_meta_is_sorted_json(self, tmp_path):
        out = tmp_path / "m.json"
        write_meta(out, d=17, zeta=1, alpha=2)
        payload = json.loads(out.read_text())
        assert payload["d"] == 17 and payload["tool"] == "localsep"
        keys = list(json.loads(out.read_text()).keys())
        assert keys == sorted(keys)
