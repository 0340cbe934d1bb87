import tempfile
from pathlib import Path

import networkx as nx
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings

from domgame.exceptions import GraphFormatError
from domgame.graph_core import (
    Graph,
    VertexSet,
    closed_neighborhood,
    encode_graph6,
    format_edge_list,
    from_edge_list,
    min_degree,
    parse_edge_list,
    parse_graph6,
    read_graph,
    read_graphs,
)

from .strategies import graphs


class VertexSetTests(SimpleTestCase):
    def test_iterates_in_ascending_order(self):
        vertices = VertexSet.of(6, [4, 0, 2])
        self.assertEqual(list(vertices), [0, 2, 4])
        self.assertEqual(len(vertices), 3)
        self.assertIn(2, vertices)
        self.assertNotIn(3, vertices)
        self.assertNotIn(9, vertices)

    def test_set_algebra(self):
        left = VertexSet.of(5, [0, 1, 2])
        right = VertexSet.of(5, [2, 3])
        self.assertEqual(list(left | right), [0, 1, 2, 3])
        self.assertEqual(list(left & right), [2])
        self.assertEqual(list(left - right), [0, 1])
        self.assertEqual(list(left.complement()), [3, 4])
        self.assertTrue((left & right).issubset(left))

    def test_rejects_vertices_outside_range(self):
        with self.assertRaises(ValueError):
            VertexSet.of(3, [3])
        with self.assertRaises(ValueError):
            VertexSet.of(3, [0]) | VertexSet.of(4, [0])


class GraphTests(SimpleTestCase):
    def test_path_degrees_and_edges(self):
        g = from_edge_list(3, [(0, 1), (2, 1)])
        self.assertEqual(g.degrees(), (1, 2, 1))
        self.assertEqual(g.edges(), [(0, 1), (1, 2)])
        self.assertEqual(g.edge_count, 2)
        self.assertEqual(list(g.neighbors(1)), [0, 2])

    def test_duplicate_edges_collapse(self):
        g = from_edge_list(2, [(0, 1), (1, 0)])
        self.assertEqual(g.edge_count, 1)

    def test_closed_neighborhood(self):
        g = from_edge_list(4, [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(list(closed_neighborhood(g, 1)), [0, 1, 2])
        self.assertEqual(list(closed_neighborhood(g, 3)), [2, 3])

    def test_min_degree(self):
        self.assertEqual(min_degree(Graph.from_networkx(nx.star_graph(3))), 1)
        self.assertEqual(min_degree(from_edge_list(3, [(0, 1)])), 0)
        self.assertEqual(min_degree(Graph.from_networkx(nx.petersen_graph())), 3)

    def test_invalid_graphs(self):
        with self.assertRaises(GraphFormatError):
            from_edge_list(3, [(1, 1)])
        with self.assertRaises(GraphFormatError):
            from_edge_list(3, [(0, 3)])
        with self.assertRaises(GraphFormatError):
            from_edge_list(0, [])
        with self.assertRaises(GraphFormatError):
            Graph(2, (0b10, 0b00))

    def test_from_networkx_numbers_nodes_in_sorted_order(self):
        cube = Graph.from_networkx(nx.hypercube_graph(3))
        self.assertEqual(cube.n, 8)
        self.assertEqual(set(cube.degrees()), {3})

    def test_relabel_keeps_the_degree_sequence(self):
        g = from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
        moved = g.relabel([3, 2, 1, 0])
        self.assertEqual(moved.degree(3), 3)
        self.assertEqual(sorted(moved.degrees()), sorted(g.degrees()))
        with self.assertRaises(GraphFormatError):
            g.relabel([0, 0, 1, 2])

    @given(graphs())
    @hypothesis_settings(max_examples=50, deadline=None)
    def test_two_step_ball_contains_closed_neighborhoods(self, g):
        for v in range(g.n):
            self.assertEqual(g.closed[v] & g.ball2[v], g.closed[v])
            for u in g.neighbors(v):
                self.assertEqual(g.closed[u] & g.ball2[v], g.closed[u])


class Graph6Tests(SimpleTestCase):
    def test_triangle(self):
        g = parse_graph6('Bw')
        self.assertEqual(g.edges(), [(0, 1), (0, 2), (1, 2)])
        self.assertEqual(encode_graph6(g), 'Bw')

    def test_header_is_accepted(self):
        petersen = Graph.from_networkx(nx.petersen_graph())
        text = encode_graph6(petersen)
        self.assertEqual(parse_graph6('>>graph6<<' + text), petersen)
        self.assertEqual(parse_graph6(text + '\n'), petersen)

    def test_malformed_strings(self):
        for text in ['', 'B', 'Bw~~', 'B w', ':Bw']:
            with self.subTest(text=text):
                with self.assertRaises(GraphFormatError):
                    parse_graph6(text)


class EdgeListTests(SimpleTestCase):
    def test_parse_with_comments(self):
        g = parse_edge_list('# a path\n3 2\n0 1\n\n1 2\n')
        self.assertEqual(g.edges(), [(0, 1), (1, 2)])
        self.assertEqual(parse_edge_list(format_edge_list(g)), g)

    def test_isolated_vertices_are_kept(self):
        g = parse_edge_list('4 1\n0 1\n')
        self.assertEqual(g.n, 4)
        self.assertEqual(min_degree(g), 0)

    def test_malformed_lists(self):
        for text in ['', '3 2\n0 1\n', '3 1\n0 x\n', '3 1\n0 1 2\n', '2 1\n0 2\n']:
            with self.subTest(text=text):
                with self.assertRaises(GraphFormatError):
                    parse_edge_list(text)


class ReadGraphTests(SimpleTestCase):
    def test_graph6_file_with_several_lines(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'small.g6'
            path.write_text('Bw\nA_\n')
            entries = read_graphs(path)
            self.assertEqual([graph_id for graph_id, _ in entries], ['small:1', 'small:2'])
            self.assertEqual(entries[1][1].edges(), [(0, 1)])
            self.assertEqual(read_graph(path).n, 3)

    def test_edge_list_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'p3.txt'
            path.write_text('3 2\n0 1\n1 2\n')
            self.assertEqual(read_graphs(path), [('p3', from_edge_list(3, [(0, 1), (1, 2)]))])
