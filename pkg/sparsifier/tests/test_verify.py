import json
import math

import numpy as np
from django.test import SimpleTestCase

from sparsifier.errors import ConfigError, InvalidGraphError, LimitExceededError
from sparsifier.generators import complete_graph, gnp_graph
from sparsifier.graph import UNDIRECTED, Graph, enumerate_cuts, motif_cut_value
from sparsifier.motifs import enumerate_instances, preset_motif
from sparsifier.verify import (
    CutScanner,
    check_invariants,
    instance_connectivity,
    max_cut_error,
    merge_reports,
    relative_errors,
    sampled_cut_error,
)


TRIANGLE = preset_motif("triangle")


class CutScannerTests(SimpleTestCase):
    def test_exhaustive_follows_enumerate_cuts(self):
        scanner = CutScanner.exhaustive(5)
        cuts = list(enumerate_cuts(5))
        self.assertEqual(len(scanner), len(cuts))
        for i, cut in enumerate(cuts):
            self.assertEqual(scanner.cut(i), cut)

    def test_values_match_direct_evaluation(self):
        g = gnp_graph(7, 0.6, seed=1, weight_range=(0.5, 2.0))
        instances = enumerate_instances(g, TRIANGLE)
        scanner = CutScanner.exhaustive(g.n, threads=2)
        values = scanner.instance_values(instances)
        for i, cut in enumerate(enumerate_cuts(g.n)):
            self.assertAlmostEqual(values[i], motif_cut_value(instances, cut))

    def test_sampled_cuts_are_proper(self):
        scanner = CutScanner.sampled(6, 20, np.random.default_rng(0))
        self.assertEqual(len(scanner), 26)
        sizes = scanner.sides.sum(axis=1)
        self.assertTrue(((sizes > 0) & (sizes < 6)).all())
        with self.assertRaises(ConfigError):
            CutScanner.sampled(6, 0, np.random.default_rng(0))

    def test_exhaustive_limit(self):
        with self.assertRaises(LimitExceededError):
            CutScanner.exhaustive(21)


class RelativeErrorTests(SimpleTestCase):
    def test_zero_base(self):
        errors = relative_errors(np.array([0.0, 0.0, 2.0]), np.array([0.0, 1.0, 3.0]))
        self.assertEqual(errors[0], 0.0)
        self.assertTrue(math.isinf(errors[1]))
        self.assertEqual(errors[2], 0.5)


class CutErrorTests(SimpleTestCase):
    def test_identical_graphs(self):
        g = gnp_graph(8, 0.5, seed=0)
        report = max_cut_error(g, g, TRIANGLE, epsilon=0.0)
        self.assertEqual(report.max_relative_error, 0.0)
        self.assertEqual(report.cuts_checked, 127)
        self.assertTrue(report.passed)

    def test_error_against_empty_sparsifier(self):
        g = complete_graph(4)
        empty = Graph.from_edges(4, UNDIRECTED, [])
        report = max_cut_error(g, empty, TRIANGLE, epsilon=0.5)
        self.assertEqual(report.max_relative_error, 1.0)
        self.assertFalse(report.passed)
        self.assertEqual(report.failures()[0].name, "cut_error[triangle:u]")

    def test_infinite_error_serializes_as_string(self):
        empty = Graph.from_edges(4, UNDIRECTED, [])
        report = max_cut_error(empty, complete_graph(4), TRIANGLE)
        data = json.loads(report.to_json())
        self.assertEqual(data["max_relative_error"], "inf")
        self.assertEqual(set(data), {"max_relative_error", "argmax_cut", "cuts_checked", "mode", "invariants"})
        self.assertIn(0, data["argmax_cut"])

    def test_mismatched_graphs(self):
        with self.assertRaises(InvalidGraphError):
            max_cut_error(complete_graph(4), complete_graph(5), TRIANGLE)

    def test_exhaustive_refuses_large_graphs(self):
        g = complete_graph(25)
        with self.assertRaises(LimitExceededError) as ctx:
            max_cut_error(g, g, TRIANGLE)
        self.assertIn("sampled", str(ctx.exception))

    def test_sampled_mode(self):
        g = gnp_graph(25, 0.3, seed=2)
        report = sampled_cut_error(g, g, TRIANGLE, 50, np.random.default_rng(1), epsilon=0.0)
        self.assertEqual(report.mode, "sampled")
        self.assertEqual(report.cuts_checked, 75)
        self.assertEqual(report.max_relative_error, 0.0)

    def test_merge_keeps_worst(self):
        g = complete_graph(4)
        half = g.rescaled(0.5)
        reports = [max_cut_error(g, g, TRIANGLE, epsilon=0.1),
                   max_cut_error(g, half, preset_motif("path2"), epsilon=0.1)]
        merged = merge_reports(reports)
        self.assertAlmostEqual(merged.max_relative_error, 0.75)
        self.assertEqual(len(merged.invariants), 2)
        self.assertFalse(merged.passed)


class InstanceConnectivityTests(SimpleTestCase):
    def test_k4_triangle(self):
        g = complete_graph(4)
        inst = enumerate_instances(g, TRIANGLE)[0]
        self.assertEqual(instance_connectivity(g, TRIANGLE, inst), 3.0)


class InvariantSuiteTests(SimpleTestCase):
    def test_all_hold_on_small_graphs(self):
        cases = [
            (complete_graph(5), TRIANGLE),
            (gnp_graph(8, 0.6, seed=3, weight_range=(0.5, 2.0)), TRIANGLE),
            (gnp_graph(7, 0.6, seed=1), preset_motif("path2")),
        ]
        for g, m in cases:
            with self.subTest(n=g.n, motif=m.label):
                report = check_invariants(g, m)
                self.assertEqual([f.name for f in report.failures()], [])
                names = {item.name for item in report.invariants}
                self.assertIn("strength_oracle", names)
                self.assertIn("gomory_hu_oracle", names)
                self.assertIn("critical_preservation", names)

    def test_limit(self):
        with self.assertRaises(LimitExceededError):
            check_invariants(complete_graph(15), TRIANGLE)
