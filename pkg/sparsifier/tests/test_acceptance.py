"""
Full-size acceptance experiments. They take minutes; enable with
RUN_SLOW_TESTS=1 or run them through `manage.py bench`.
"""
import unittest

from django.conf import settings
from django.test import SimpleTestCase

from sparsifier import bench


@unittest.skipUnless(getattr(settings, "RUN_SLOW_TESTS", False), "set RUN_SLOW_TESTS=1 to run")
class AcceptanceTests(SimpleTestCase):
    def assertExperimentPasses(self, name):
        result = bench.run_experiment(name)
        self.assertTrue(result["passed"], result)

    def test_weights_oracle(self):
        self.assertExperimentPasses("weights-oracle")

    def test_strength_exactness(self):
        self.assertExperimentPasses("strength-exactness")

    def test_sandwich(self):
        self.assertExperimentPasses("sandwich")

    def test_quality(self):
        self.assertExperimentPasses("quality")

    def test_size(self):
        self.assertExperimentPasses("size")

    def test_critical(self):
        self.assertExperimentPasses("critical")

    def test_lower_bound(self):
        self.assertExperimentPasses("lower-bound")

    def test_determinism(self):
        self.assertExperimentPasses("determinism")
