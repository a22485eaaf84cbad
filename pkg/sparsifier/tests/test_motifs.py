import os
import tempfile

from django.test import SimpleTestCase, override_settings

from sparsifier.errors import InvalidGraphError, LimitExceededError, MotifSpecError
from sparsifier.generators import complete_graph, gnp_graph
from sparsifier.graph import DIRECTED, UNDIRECTED, Graph, Motif
from sparsifier.motifs import (
    automorphism_count,
    count_homomorphisms,
    enumerate_instances,
    parse_motif,
    parse_motif_list,
    preset_motif,
)


class PresetTests(SimpleTestCase):
    def test_preset_shapes(self):
        self.assertEqual((preset_motif("edge").r, preset_motif("edge").r_star), (2, 1))
        self.assertEqual((preset_motif("triangle").r, preset_motif("triangle").r_star), (3, 3))
        self.assertEqual((preset_motif("path2").r, preset_motif("path2").r_star), (3, 2))
        self.assertEqual((preset_motif("cycle4").r, preset_motif("cycle4").r_star), (4, 4))
        self.assertEqual((preset_motif("clique4").r, preset_motif("clique4").r_star), (4, 6))

    def test_unknown_or_oversized_presets(self):
        for name in ("square", "path9", "cycle2", "clique7", "triangle3", "path"):
            with self.subTest(name=name):
                with self.assertRaises(MotifSpecError):
                    preset_motif(name)

    def test_directed_cycle_is_oriented(self):
        m = preset_motif("cycle3", DIRECTED)
        self.assertEqual(set(m.edges), {(0, 1), (1, 2), (2, 0)})

    def test_disconnected_motif_is_rejected(self):
        with self.assertRaises(InvalidGraphError):
            Motif.from_edges(4, UNDIRECTED, [(0, 1), (2, 3)])


class MotifSpecTests(SimpleTestCase):
    def test_suffix_overrides_default_kind(self):
        self.assertEqual(parse_motif("triangle:d").kind, DIRECTED)
        self.assertEqual(parse_motif("triangle", default_kind=DIRECTED).kind, DIRECTED)
        self.assertEqual(parse_motif("triangle:u", default_kind=DIRECTED).kind, UNDIRECTED)

    def test_inline_motif(self):
        m = parse_motif("3;u;0 1 1;1 2 1")
        self.assertEqual(m.r, 3)
        self.assertEqual(m.edges, ((0, 1), (1, 2)))

    def test_motif_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "star.txt")
            with open(path, "w") as f:
                f.write("4\nu\n0 1 1\n0 2 1\n0 3 1\n")
            m = parse_motif(path)
        self.assertEqual((m.r, m.r_star), (4, 3))

    def test_bad_specs(self):
        for spec in ("", "triangle:x", "bogus", "3;u;0 1 1;2 3 1"):
            with self.subTest(spec=spec):
                with self.assertRaises(MotifSpecError):
                    parse_motif(spec)

    def test_motif_list(self):
        motifs = parse_motif_list("triangle, path2")
        self.assertEqual([m.label for m in motifs], ["triangle:u", "path2:u"])
        with self.assertRaises(MotifSpecError):
            parse_motif_list(" , ")


class AutomorphismTests(SimpleTestCase):
    def test_counts(self):
        self.assertEqual(automorphism_count(preset_motif("triangle")), 6)
        self.assertEqual(automorphism_count(preset_motif("path2")), 2)
        self.assertEqual(automorphism_count(preset_motif("cycle3", DIRECTED)), 3)
        self.assertEqual(automorphism_count(preset_motif("cycle4")), 8)

    def test_limit(self):
        with self.assertRaises(LimitExceededError):
            automorphism_count(preset_motif("clique4"), limit=3)


class EnumerationTests(SimpleTestCase):
    def test_k4_counts(self):
        k4 = complete_graph(4)
        self.assertEqual(len(enumerate_instances(k4, preset_motif("triangle"))), 4)
        self.assertEqual(len(enumerate_instances(k4, preset_motif("path2"))), 12)
        self.assertEqual(len(enumerate_instances(k4, preset_motif("clique4"))), 1)
        self.assertEqual(len(enumerate_instances(k4, preset_motif("cycle4"))), 3)

    def test_complete_digraph_counts(self):
        k4 = complete_graph(4, DIRECTED)
        self.assertEqual(len(enumerate_instances(k4, preset_motif("cycle3", DIRECTED))), 8)
        self.assertEqual(len(enumerate_instances(k4, preset_motif("triangle", DIRECTED))), 24)

    def test_instances_times_automorphisms_equals_homomorphisms(self):
        for seed in range(5):
            for kind in (UNDIRECTED, DIRECTED):
                g = gnp_graph(7, 0.5, seed=seed, directed=kind == DIRECTED)
                for name in ("triangle", "path2", "path3", "cycle4"):
                    with self.subTest(seed=seed, kind=kind, motif=name):
                        m = preset_motif(name, kind)
                        self.assertEqual(len(enumerate_instances(g, m)) * automorphism_count(m),
                                         count_homomorphisms(g, m))

    def test_output_is_sorted_and_deterministic(self):
        g = gnp_graph(8, 0.6, seed=3)
        first = enumerate_instances(g, preset_motif("path2"))
        self.assertEqual(first, sorted(first, key=lambda inst: inst.sort_key))
        self.assertEqual(first, enumerate_instances(g, preset_motif("path2")))

    def test_no_instances(self):
        g = Graph.from_edges(4, UNDIRECTED, [(0, 1), (2, 3)])
        self.assertEqual(enumerate_instances(g, preset_motif("triangle")), [])

    def test_kind_mismatch(self):
        with self.assertRaises(InvalidGraphError):
            enumerate_instances(complete_graph(4), preset_motif("triangle", DIRECTED))

    @override_settings(SPARSIFY_ENUMERATION_LIMIT=5)
    def test_enumeration_limit(self):
        with self.assertRaises(LimitExceededError):
            enumerate_instances(complete_graph(6), preset_motif("triangle"))
