import os
import tempfile

from django.test import SimpleTestCase

from sparsifier.errors import GraphFormatError, InvalidGraphError, LimitExceededError
from sparsifier.generators import complete_graph, gnp_graph
from sparsifier.graph import (
    DIRECTED,
    UNDIRECTED,
    Cut,
    Graph,
    MotifInstance,
    bidirected_motif,
    encode_undirected,
    enumerate_cuts,
    format_graph,
    instance_weight,
    load_graph,
    motif_cut_value,
    parse_graph,
    save_graph,
)
from sparsifier.motifs import enumerate_instances, preset_motif


class GraphTests(SimpleTestCase):
    def test_undirected_edges_are_normalized_and_sorted(self):
        g = Graph.from_edges(3, UNDIRECTED, [(2, 1, 1.5), (1, 0, 2.0)])
        self.assertEqual(g.edges, ((0, 1, 2.0), (1, 2, 1.5)))
        self.assertTrue(g.has_edge(1, 0))
        self.assertEqual(g.weight(2, 1), 1.5)

    def test_directed_edges_keep_orientation(self):
        g = Graph.from_edges(2, DIRECTED, [(1, 0, 1.0)])
        self.assertTrue(g.has_edge(1, 0))
        self.assertFalse(g.has_edge(0, 1))

    def test_zero_weights_are_dropped(self):
        g = Graph.from_edges(3, UNDIRECTED, [(0, 1, 0.0), (1, 2, 1.0)])
        self.assertEqual(g.m, 1)

    def test_invalid_graphs_are_rejected(self):
        with self.assertRaises(InvalidGraphError):
            Graph.from_edges(2, UNDIRECTED, [(0, 0, 1.0)])
        with self.assertRaises(InvalidGraphError):
            Graph.from_edges(2, UNDIRECTED, [(0, 1, -1.0)])
        with self.assertRaises(InvalidGraphError):
            Graph.from_edges(2, UNDIRECTED, [(0, 1, 1.0), (1, 0, 2.0)])
        with self.assertRaises(InvalidGraphError):
            Graph.from_edges(2, UNDIRECTED, [(0, 5, 1.0)])

    def test_weight_ratio(self):
        g = Graph.from_edges(3, UNDIRECTED, [(0, 1, 0.5), (1, 2, 2.0)])
        self.assertEqual(g.weight_ratio(), 4.0)


class EdgeListFormatTests(SimpleTestCase):
    def test_parse_skips_comments_and_blank_lines(self):
        g = parse_graph("# triangle\n3\nu\n\n0 1 1\n1 2 2.5\n0 2 1\n")
        self.assertEqual(g.n, 3)
        self.assertEqual(g.kind, UNDIRECTED)
        self.assertEqual(g.weight(1, 2), 2.5)

    def test_parse_errors_carry_line_numbers(self):
        cases = {
            "3\nu\n0 1\n": 3,
            "3\nu\n0 1 1\n1 0 1\n": 4,
            "3\nu\n0 0 1\n": 3,
            "3\nu\n0 1 -2\n": 3,
            "3\nx\n": 2,
            "three\n": 1,
        }
        for text, line_no in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(GraphFormatError) as ctx:
                    parse_graph(text)
                self.assertEqual(ctx.exception.line_no, line_no)

    def test_directed_duplicates_are_distinct_arcs(self):
        g = parse_graph("2\nd\n0 1 1\n1 0 1\n")
        self.assertEqual(g.m, 2)

    def test_file_round_trip_is_exact(self):
        g = Graph.from_edges(3, UNDIRECTED, [(0, 1, 0.1), (1, 2, 1 / 3)])
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "g.txt")
            save_graph(g, path)
            self.assertEqual(load_graph(path), g)

    def test_format_graph(self):
        g = Graph.from_edges(2, DIRECTED, [(1, 0, 2.0)])
        self.assertEqual(format_graph(g), "2\nd\n1 0 2.0\n")

    def test_missing_file_is_a_format_error(self):
        with self.assertRaises(GraphFormatError):
            load_graph("/nonexistent/graph.txt")


class CutTests(SimpleTestCase):
    def test_enumerate_cuts_counts_each_cut_once(self):
        cuts = list(enumerate_cuts(4))
        self.assertEqual(len(cuts), 7)
        self.assertEqual(len({c.side for c in cuts}), 7)
        self.assertTrue(all(0 in c.side for c in cuts))

    def test_enumerate_cuts_limit(self):
        with self.assertRaises(LimitExceededError):
            list(enumerate_cuts(25))

    def test_cut_must_be_proper(self):
        with self.assertRaises(InvalidGraphError):
            Cut.of(3, [])
        with self.assertRaises(InvalidGraphError):
            Cut.of(3, [0, 1, 2])

    def test_canonical_puts_vertex_zero_on_side(self):
        self.assertEqual(Cut.of(4, [1, 2]).canonical().side, frozenset({0, 3}))


class MotifCutValueTests(SimpleTestCase):
    def test_k4_singleton_cut_crosses_three_triangles(self):
        g = complete_graph(4)
        instances = enumerate_instances(g, preset_motif("triangle"))
        self.assertEqual(motif_cut_value(instances, Cut.of(4, [0])), 3.0)
        self.assertEqual(motif_cut_value(instances, Cut.of(4, [0, 1])), 4.0)

    def test_weighted_triangle_instance_weight(self):
        g = Graph.from_edges(3, UNDIRECTED, [(0, 1, 2.0), (1, 2, 3.0), (0, 2, 5.0)])
        (inst,) = enumerate_instances(g, preset_motif("triangle"))
        self.assertEqual(inst.weight, 30.0)
        self.assertEqual(instance_weight(g, inst), 30.0)

    def test_stale_instance_is_rejected(self):
        g = Graph.from_edges(3, UNDIRECTED, [(0, 1, 1.0)])
        stale = MotifInstance(vertex_map=(0, 1, 2), edge_set=((0, 1), (1, 2)), weight=1.0)
        with self.assertRaises(InvalidGraphError):
            instance_weight(g, stale)


class BidirectedEncodingTests(SimpleTestCase):
    def test_encoding_preserves_instance_weights_and_cut_values(self):
        for name in ("triangle", "path2", "cycle4"):
            g = gnp_graph(6, 0.7, seed=len(name), weight_range=(0.5, 2.0))
            m = preset_motif(name)
            encoded = encode_undirected(g)
            undirected = enumerate_instances(g, m)
            directed = enumerate_instances(encoded, bidirected_motif(m))
            with self.subTest(motif=name):
                self.assertTrue(encoded.directed)
                self.assertEqual(encoded.m, 2 * g.m)
                self.assertEqual(len(directed), len(undirected))
                by_edges = {frozenset(frozenset(key) for key in inst.edge_set): inst for inst in undirected}
                for inst in directed:
                    original = by_edges[frozenset(frozenset(key) for key in inst.edge_set)]
                    self.assertAlmostEqual(instance_weight(encoded, inst), instance_weight(g, original), places=12)
                for cut in enumerate_cuts(g.n):
                    self.assertAlmostEqual(motif_cut_value(directed, cut), motif_cut_value(undirected, cut),
                                           places=9)

    def test_encoding_rejects_directed_input(self):
        with self.assertRaises(InvalidGraphError):
            encode_undirected(Graph.from_edges(2, DIRECTED, [(0, 1, 1.0)]))
        with self.assertRaises(InvalidGraphError):
            bidirected_motif(preset_motif("cycle3", DIRECTED))
