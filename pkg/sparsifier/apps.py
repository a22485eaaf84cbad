import logging

from django.apps import AppConfig


logger = logging.getLogger(__name__)


class SparsifierConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'sparsifier'

    def ready(self):
        # Bad SPARSIFY_* settings only warn here; commands fail with a usage error later
        from sparsifier.conf import invalid_settings
        from sparsifier.errors import SparsifierError
        from sparsifier.sparsify import SparsifyConfig
        for name in invalid_settings():
            logger.warning("Setting %s is not a valid number; commands that read it will fail", name)
        try:
            SparsifyConfig.from_settings()
        except (SparsifierError, TypeError, ValueError) as e:
            logger.warning("Default sparsification settings are invalid: %s", e)
