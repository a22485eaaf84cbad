import math
from unittest import mock

from django.test import SimpleTestCase

from sparsifier import bench
from sparsifier.bench import EXPERIMENTS, json_safe, run_experiment


def crashing(**kwargs):
    raise RuntimeError("boom")


class BenchTests(SimpleTestCase):
    def test_registry(self):
        self.assertEqual(set(EXPERIMENTS), {
            "weights-oracle", "strength-exactness", "sandwich", "quality",
            "size", "critical", "lower-bound", "determinism",
        })

    def test_quick_exact_experiments_pass(self):
        for name in ("weights-oracle", "strength-exactness", "sandwich", "determinism"):
            with self.subTest(name=name):
                result = run_experiment(name, seeds=2, quick=True)
                self.assertTrue(result["passed"], result)
                self.assertIn("seconds", result)

    def test_crash_is_reported(self):
        with mock.patch.dict(bench.EXPERIMENTS, {"weights-oracle": crashing}):
            with self.assertLogs("sparsifier.bench", level="ERROR"):
                result = run_experiment("weights-oracle")
        self.assertFalse(result["passed"])
        self.assertEqual(result["error"], "boom")

    def test_json_safe(self):
        self.assertEqual(json_safe({1: [math.inf, -math.inf, 0.5]}), {"1": ["inf", "-inf", 0.5]})

    def test_quick_size_run_halves_and_passes(self):
        result = run_experiment("size", seeds=2, quick=True)
        self.assertEqual(result["n"], bench.SIZE_QUICK_N)
        self.assertEqual(result["sampling"], "balanced")
        self.assertTrue(all(run["kept_fraction"] <= 0.5 for run in result["runs"]), result)
        self.assertGreater(result["pass_rate"], 0, result)

    def test_quick_quality_tuned_runs_sample(self):
        result = run_experiment("quality", seeds=2, quick=True)
        identity = result["threshold_scale_1"]
        tuned = result["threshold_scale_tuned"]
        self.assertTrue(all(s["pass_rate"] == 1.0 for s in identity.values()), result)
        self.assertLess(tuned["connectivity"]["mean_kept_fraction"], 1.0)
        self.assertEqual(tuned["connectivity"]["threshold_scale"], 1e13)
        self.assertEqual(tuned["strength"]["threshold_scale"], 1e9)

    def test_quick_lower_bound_reports_both_pools(self):
        result = run_experiment("lower-bound", quick=True)
        self.assertTrue(result["passed"], result)
        search = result["search"]["10"]
        self.assertEqual(set(search), {"subgraph", "complete"})
        self.assertLess(search["complete"]["search"]["best_error"], 0.75)
