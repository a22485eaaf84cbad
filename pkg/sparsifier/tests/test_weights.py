from django.test import SimpleTestCase

from sparsifier.errors import InvalidGraphError, LimitExceededError
from sparsifier.generators import complete_graph, gnp_graph
from sparsifier.graph import DIRECTED, UNDIRECTED, Graph
from sparsifier.motifs import preset_motif
from sparsifier.weights import (
    build_sigma_graph,
    motif_weights_fast,
    motif_weights_naive,
    part_sizes,
    sigma_triangle_total,
)


class PartSizeTests(SimpleTestCase):
    def test_balanced_parts(self):
        self.assertEqual(part_sizes(3), (1, 1, 1))
        self.assertEqual(part_sizes(4), (2, 1, 1))
        self.assertEqual(part_sizes(5), (2, 2, 1))
        self.assertEqual(part_sizes(6), (2, 2, 2))


class MotifWeightTests(SimpleTestCase):
    def test_k4_triangle_weights(self):
        weights = motif_weights_fast(complete_graph(4), preset_motif("triangle"))
        self.assertEqual(set(weights.values()), {2.0})

    def test_weights_are_builtin_floats(self):
        g = gnp_graph(7, 0.6, seed=3, weight_range=(0.5, 2.0))
        for name in ("triangle", "path3", "cycle4"):
            with self.subTest(motif=name):
                weights = motif_weights_fast(g, preset_motif(name))
                self.assertTrue(all(type(value) is float for value in weights.values()))
                self.assertNotIn("np.", repr(list(weights.values())))

    def test_k4_two_path_weights(self):
        weights = motif_weights_fast(complete_graph(4), preset_motif("path2"))
        self.assertEqual(set(weights.values()), {4.0})

    def test_weighted_triangle(self):
        g = Graph.from_edges(3, UNDIRECTED, [(0, 1, 2.0), (1, 2, 3.0), (0, 2, 5.0)])
        for weights in (motif_weights_fast(g, preset_motif("triangle")),
                        motif_weights_naive(g, preset_motif("triangle"))):
            self.assertEqual(len(weights), 3)
            for value in weights.values():
                self.assertAlmostEqual(value, 30.0)

    def test_edges_outside_instances_get_zero(self):
        g = Graph.from_edges(4, UNDIRECTED, [(0, 1), (1, 2), (0, 2), (2, 3)])
        weights = motif_weights_fast(g, preset_motif("triangle"))
        self.assertEqual(weights[(2, 3)], 0.0)
        self.assertEqual(weights[(0, 1)], 1.0)

    def test_fast_matches_naive(self):
        motifs = ("triangle", "path2", "path3", "cycle4", "clique4", "cycle3")
        for seed in range(6):
            for kind in (UNDIRECTED, DIRECTED):
                g = gnp_graph(7, 0.6, seed=seed, directed=kind == DIRECTED, weight_range=(0.5, 2.0))
                for name in motifs:
                    m = preset_motif(name, kind)
                    with self.subTest(seed=seed, kind=kind, motif=name):
                        fast = motif_weights_fast(g, m)
                        naive = motif_weights_naive(g, m)
                        self.assertEqual(set(fast), set(naive))
                        for key in g.edge_keys:
                            self.assertAlmostEqual(fast[key], naive[key], delta=1e-9 * max(1.0, naive[key]))

    def test_single_edge_motif(self):
        g = gnp_graph(6, 0.5, seed=2, weight_range=(0.5, 2.0))
        weights = motif_weights_fast(g, preset_motif("edge"))
        self.assertEqual(weights, g.weights)

    def test_empty_graph(self):
        g = Graph.from_edges(5, UNDIRECTED, [])
        self.assertEqual(motif_weights_fast(g, preset_motif("triangle")), {})


class SigmaGraphTests(SimpleTestCase):
    def test_triangle_total_counts_weighted_homomorphisms(self):
        self.assertAlmostEqual(sigma_triangle_total(complete_graph(4), preset_motif("triangle")), 24.0)
        self.assertAlmostEqual(sigma_triangle_total(complete_graph(4), preset_motif("path2")), 24.0)

    def test_vertex_budget(self):
        with self.assertRaises(LimitExceededError):
            build_sigma_graph(complete_graph(20), preset_motif("clique6"), budget=1000)

    def test_small_motif_and_kind_checks(self):
        with self.assertRaises(InvalidGraphError):
            build_sigma_graph(complete_graph(4), preset_motif("edge"))
        with self.assertRaises(InvalidGraphError):
            build_sigma_graph(complete_graph(4), preset_motif("triangle", DIRECTED))
