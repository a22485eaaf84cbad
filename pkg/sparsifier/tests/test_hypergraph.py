import itertools

from django.test import SimpleTestCase

from sparsifier.errors import InvalidGraphError, LimitExceededError
from sparsifier.generators import complete_graph, gnp_graph
from sparsifier.graph import UNDIRECTED, Graph
from sparsifier.hypergraph import (
    build_motif_hypergraph,
    estimate_strengths,
    exact_strengths,
    hypergraph_min_cut,
    iterative_strength_estimate,
)
from sparsifier.motifs import enumerate_instances, preset_motif
from sparsifier.verify import brute_force_strengths


def triangle_hypergraph(g):
    return build_motif_hypergraph(g, enumerate_instances(g, preset_motif("triangle")))


def two_triangles():
    return Graph.from_edges(6, UNDIRECTED, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


class BuildTests(SimpleTestCase):
    def test_one_hyperedge_per_vertex_set(self):
        g = complete_graph(4)
        h = build_motif_hypergraph(g, enumerate_instances(g, preset_motif("path2")))
        # 12 two-paths on 4 vertex triples, 3 per triple
        self.assertEqual(len(h.hyperedges), 4)
        self.assertTrue(all(e.weight == 3.0 for e in h.hyperedges))
        self.assertEqual(len(h.instance_edge), 12)

    def test_cut_value_and_components(self):
        h = triangle_hypergraph(two_triangles())
        self.assertEqual(h.cut_value([0]), 1.0)
        self.assertEqual(h.cut_value([0, 1, 2]), 0.0)
        self.assertEqual(h.component_count(), 2)


class MinCutTests(SimpleTestCase):
    def test_k4_triangle_min_cut(self):
        h = triangle_hypergraph(complete_graph(4))
        cut, value = hypergraph_min_cut(h, range(4))
        self.assertEqual(value, 3.0)
        self.assertIn(0, cut.side)

    def test_tied_cuts_pick_smallest_side(self):
        # every singleton of K4 cuts 3 triangles; {0} is the smallest canonical side
        h = triangle_hypergraph(complete_graph(4))
        ma, _ = hypergraph_min_cut(h, range(4))
        brute, _ = hypergraph_min_cut(h, range(4), method="brute")
        self.assertEqual(ma.side, frozenset({0}))
        self.assertEqual(ma.side, brute.side)

    def test_ma_agrees_with_brute_force(self):
        for seed in range(15):
            g = gnp_graph(8, 0.6, seed=seed, weight_range=(0.5, 2.0))
            h = triangle_hypergraph(g)
            if not h.hyperedges:
                continue
            with self.subTest(seed=seed):
                _, ma = hypergraph_min_cut(h, range(g.n))
                _, brute = hypergraph_min_cut(h, range(g.n), method="brute")
                self.assertAlmostEqual(ma, brute, places=9)

    def test_subset_and_errors(self):
        h = triangle_hypergraph(complete_graph(5))
        _, value = hypergraph_min_cut(h, [0, 1, 2])
        self.assertEqual(value, 1.0)
        with self.assertRaises(InvalidGraphError):
            hypergraph_min_cut(h, [0])
        with self.assertRaises(InvalidGraphError):
            hypergraph_min_cut(h, range(5), method="flow")


class StrengthTests(SimpleTestCase):
    def test_k4_triangles_have_strength_three(self):
        h = triangle_hypergraph(complete_graph(4))
        table = exact_strengths(h)
        self.assertEqual(table.hyperedge_strength, (3.0, 3.0, 3.0, 3.0))
        self.assertAlmostEqual(table.normalized_sum(h), 4 / 3)
        self.assertLessEqual(table.normalized_sum(h), h.n - h.component_count())

    def test_disjoint_triangles(self):
        h = triangle_hypergraph(two_triangles())
        table = exact_strengths(h)
        self.assertEqual(table.hyperedge_strength, (1.0, 1.0))
        self.assertLessEqual(table.normalized_sum(h), 4)

    def test_disjoint_triangles_of_weight_one_and_seven(self):
        g = Graph.from_edges(6, UNDIRECTED, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                                             (3, 4, 7.0), (4, 5, 1.0), (3, 5, 1.0)])
        h = triangle_hypergraph(g)
        self.assertEqual([e.weight for e in h.hyperedges], [1.0, 7.0])
        table = exact_strengths(h)
        self.assertEqual(table.hyperedge_strength, (1.0, 7.0))
        self.assertEqual(estimate_strengths(h).hyperedge_strength, (1.0, 7.0))
        self.assertAlmostEqual(table.normalized_sum(h), 2.0)

    def test_exact_matches_definition(self):
        for seed in range(10):
            g = gnp_graph(7, 0.7, seed=seed, weight_range=(0.5, 2.0))
            h = triangle_hypergraph(g)
            with self.subTest(seed=seed):
                exact = exact_strengths(h).hyperedge_strength
                for got, want in zip(exact, brute_force_strengths(h)):
                    self.assertAlmostEqual(got, want, places=9)

    def test_components_are_laminar(self):
        g = gnp_graph(9, 0.6, seed=4)
        comps = [frozenset(c) for c, _ in exact_strengths(triangle_hypergraph(g)).components]
        for a, b in itertools.combinations(comps, 2):
            self.assertTrue(a <= b or b <= a or not (a & b))

    def test_iterative_estimate_is_within_factor_two(self):
        for seed in range(8):
            g = gnp_graph(9, 0.6, seed=seed, weight_range=(0.5, 2.0))
            h = triangle_hypergraph(g)
            if not h.hyperedges:
                continue
            with self.subTest(seed=seed):
                exact = exact_strengths(h).hyperedge_strength
                estimate = iterative_strength_estimate(h)
                self.assertFalse(estimate.exact)
                for k, k_est in zip(exact, estimate.hyperedge_strength):
                    self.assertLessEqual(k_est, k * (1 + 1e-9))
                    self.assertLess(k, 2 * k_est * (1 + 1e-9))

    def test_estimate_strengths_respects_sum_bound(self):
        g = gnp_graph(10, 0.6, seed=1)
        h = triangle_hypergraph(g)
        table = estimate_strengths(h, exact_limit=0)
        self.assertLessEqual(table.normalized_sum(h), 4 * 3 * (g.n - 1))
        self.assertTrue(all(k > 0 for k in table.hyperedge_strength))

    def test_exact_limit(self):
        with self.assertRaises(LimitExceededError):
            exact_strengths(triangle_hypergraph(complete_graph(5)), limit=4)

    def test_empty_hypergraph(self):
        g = Graph.from_edges(4, UNDIRECTED, [(0, 1), (2, 3)])
        table = estimate_strengths(triangle_hypergraph(g))
        self.assertEqual(table.hyperedge_strength, ())
