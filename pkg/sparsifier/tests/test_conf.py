import os
from unittest import mock

from django.apps import apps
from django.test import SimpleTestCase, override_settings

from motifspar.settings import _env_number
from sparsifier.conf import invalid_settings, number_setting
from sparsifier.errors import ConfigError
from sparsifier.sparsify import SparsifyConfig
from sparsifier.verify import CutScanner


class EnvNumberTests(SimpleTestCase):
    def test_parses_and_falls_back(self):
        with mock.patch.dict(os.environ, {"SPARSIFY_TEST_VALUE": " 12 "}):
            self.assertEqual(_env_number("SPARSIFY_TEST_VALUE", 3, int), 12)
        with mock.patch.dict(os.environ, {"SPARSIFY_TEST_VALUE": ""}):
            self.assertEqual(_env_number("SPARSIFY_TEST_VALUE", 3, int), 3)

    def test_malformed_value_is_kept_instead_of_raising(self):
        with mock.patch.dict(os.environ, {"SPARSIFY_TEST_VALUE": "ten"}):
            self.assertEqual(_env_number("SPARSIFY_TEST_VALUE", 10.0), "ten")


class NumberSettingTests(SimpleTestCase):
    @override_settings(SPARSIFY_C1="2.5", SPARSIFY_VERIFY_LIMIT=12)
    def test_valid_values_are_cast(self):
        self.assertEqual(number_setting("SPARSIFY_C1", 10.0), 2.5)
        self.assertEqual(number_setting("SPARSIFY_VERIFY_LIMIT", 20, int), 12)
        self.assertEqual(invalid_settings(), [])

    @override_settings(SPARSIFY_C1="ten", SPARSIFY_THREADS="many")
    def test_malformed_values_raise_config_errors(self):
        with self.assertRaisesMessage(ConfigError, "SPARSIFY_C1"):
            SparsifyConfig.from_settings()
        with self.assertRaisesMessage(ConfigError, "SPARSIFY_THREADS"):
            CutScanner.exhaustive(4)
        self.assertEqual(invalid_settings(), ["SPARSIFY_C1", "SPARSIFY_THREADS"])
        # explicit arguments bypass the broken defaults
        self.assertEqual(CutScanner.exhaustive(4, threads=2).threads, 2)

    @override_settings(SPARSIFY_INVARIANT_LIMIT="x")
    def test_startup_warns_about_malformed_values(self):
        with self.assertLogs("sparsifier.apps", "WARNING") as logs:
            apps.get_app_config("sparsifier").ready()
        self.assertTrue(any("SPARSIFY_INVARIANT_LIMIT" in line for line in logs.output))
