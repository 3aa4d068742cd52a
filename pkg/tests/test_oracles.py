import pytest

from localsep import Graph, InputError
from localsep.oracles import (
    ball_by_walk_enumeration,
    biconnected_components,
    connectivity_graph_full,
    crossing_bruteforce,
    global_2cuts,
    global_cutvertices,
    simple_cycles_up_to_weight,
    subdivide,
)
from localsep.synthetic import cycle_graph, path_graph


class TestWalkBall:
    def test_c8_d4(self, c8):
        b = ball_by_walk_enumeration(c8, 0, 4)
        assert sorted(b.distances) == [0, 1, 2, 6, 7]
        assert sorted(c8.edge_endpoints(e)[:2] for e in b.member_edges) == [
            (0, 1), (0, 7), (1, 2), (6, 7),
        ]

    def test_single_vertex(self):
        g = Graph.from_edge_list([], vertex_count=1)
        b = ball_by_walk_enumeration(g, 0, 3)
        assert sorted(b.distances) == [0] and not b.member_edges

    def test_c8_d8_round_trip(self, c8):
        b = ball_by_walk_enumeration(c8, 0, 8)
        assert len(b.distances) == 8 and len(b.member_edges) == 8

    def test_size_guard(self):
        with pytest.raises(InputError, match="guard"):
            ball_by_walk_enumeration(cycle_graph(40), 0, 4)


class TestFullConnectivityGraph:
    def test_c8_exact_edges(self, c8):
        c = connectivity_graph_full(c8, 0, 4, 8)
        assert c.edges == ((1, 3), (5, 7))

    def test_k4_single_edge(self, k4):
        c = connectivity_graph_full(k4, 0, 1, 3)
        assert c.edges == ((2, 3),)

    def test_star_isolated_nodes(self):
        star = Graph.from_edge_list([(0, 1, 1), (0, 2, 1), (0, 3, 1)])
        c = connectivity_graph_full(star, 0, 1, 2)
        assert c.edges == () and len(c.partition) == len(c.node_set)


class TestSubdivide:
    def test_single_edge(self):
        g = subdivide(Graph.from_edge_list([(0, 1, 1)]), 3)
        assert g.vertex_count == 5 and g.edge_count == 4

    def test_c3_once_is_c6(self):
        g = subdivide(cycle_graph(3), 1)
        assert g.vertex_count == 6 and g.edge_count == 6
        assert all(g.degree(v) == 2 for v in range(6))

    def test_empty(self):
        g = subdivide(Graph.from_edge_list([], vertex_count=0), 2)
        assert g.vertex_count == 0

    def test_weighted_rejected(self):
        with pytest.raises(InputError):
            subdivide(Graph.from_edge_list([(0, 1, 2)]), 2)

    def test_subdivision_vertex_ids_are_addressable(self):
        base = path_graph(3)
        g = subdivide(base, 2)
        # edge 0 joins 0-1: its subdivision vertices are 3, 4
        assert g.has_edge(0, 3) and g.has_edge(3, 4) and g.has_edge(4, 1)


class TestGlobalOracles:
    def test_bowtie_cutvertex(self, bowtie):
        assert global_cutvertices(bowtie) == {0}

    def test_path_cutvertices(self):
        assert global_cutvertices(path_graph(4)) == {1, 2}

    def test_c8_2cuts_all_nonadjacent(self, c8):
        cuts = global_2cuts(c8)
        want = {
            (a, b)
            for a in range(8)
            for b in range(a + 1, 8)
            if (b - a) % 8 not in (1, 7)
        }
        assert cuts == want

    def test_k4_no_2cuts(self, k4):
        assert global_2cuts(k4) == set()

    def test_biconnected_bowtie(self, bowtie):
        assert sorted(map(sorted, biconnected_components(bowtie))) == [[0, 1, 2], [0, 3, 4]]

    def test_biconnected_path(self):
        assert sorted(map(sorted, biconnected_components(path_graph(3)))) == [[0, 1], [1, 2]]


class TestCycleEnumerationAndCrossing:
    def test_c8_has_one_cycle(self, c8):
        assert simple_cycles_up_to_weight(c8, 8) == [tuple(range(8))]
        assert simple_cycles_up_to_weight(c8, 7) == []

    def test_k4_cycle_counts(self, k4):
        cycles = simple_cycles_up_to_weight(k4, 4)
        assert len([c for c in cycles if len(c) == 3]) == 4
        assert len([c for c in cycles if len(c) == 4]) == 3

    def test_crossing_on_c8(self, c8):
        assert crossing_bruteforce(c8, 8, (0, 4), (1, 5)) is True
        assert crossing_bruteforce(c8, 8, (0, 4), (1, 2)) is False
        assert crossing_bruteforce(c8, 7, (0, 4), (1, 5)) is False  # budget too small

    def test_shared_vertex_never_crosses(self, c8):
        assert crossing_bruteforce(c8, 8, (0, 4), (0, 2)) is False
