"""
Django settings for motifspar project.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# The project is only driven through manage.py commands; the key is required by Django.
SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-motifspar-local-only')

DEBUG = os.environ.get('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'sparsifier',
]


# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/4.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
SPARSIFIER_LOG_LEVEL = os.environ.get('SPARSIFIER_LOG_LEVEL', 'INFO').strip().upper() or 'INFO'

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'sparsifier': {
            'handlers': ['console'],
            'level': SPARSIFIER_LOG_LEVEL,
            'propagate': False,
        },
    },
}


def _env_number(name, default, cast=float):
    # malformed values are kept as strings; sparsifier.apps warns about them at startup
    raw = os.environ.get(name, '').strip()
    if not raw:
        return default
    try:
        return cast(raw)
    except ValueError:
        return raw


# Sparsification constants (the algorithms leave these symbolic)
SPARSIFY_C1 = _env_number('SPARSIFY_C1', 10.0)
SPARSIFY_D = _env_number('SPARSIFY_D', 1 / 64)
# Empty means c1 + 1
SPARSIFY_D1 = _env_number('SPARSIFY_D1', None)
SPARSIFY_THRESHOLD_SCALE = _env_number('SPARSIFY_THRESHOLD_SCALE', 1.0)
SPARSIFY_SEED = _env_number('SPARSIFY_SEED', 0, int)
SPARSIFY_ENGINE = os.environ.get('SPARSIFY_ENGINE', 'strength').strip().lower()
# independent or balanced (degree-preserving dependent rounding)
SPARSIFY_SAMPLING = os.environ.get('SPARSIFY_SAMPLING', 'independent').strip().lower()
# Constant c of the strength-estimation sum bound (sum w/kappa' <= c*r*(n-1))
SPARSIFY_STRENGTH_CONSTANT = _env_number('SPARSIFY_STRENGTH_CONSTANT', 4.0)

# Resource limits
SPARSIFY_EXACT_STRENGTH_LIMIT = _env_number('SPARSIFY_EXACT_STRENGTH_LIMIT', 64, int)
SPARSIFY_BRUTE_FORCE_CUT_LIMIT = _env_number('SPARSIFY_BRUTE_FORCE_CUT_LIMIT', 20, int)
SPARSIFY_CUT_ENUMERATION_LIMIT = _env_number('SPARSIFY_CUT_ENUMERATION_LIMIT', 20, int)
SPARSIFY_ENUMERATION_LIMIT = _env_number('SPARSIFY_ENUMERATION_LIMIT', 10 ** 7, int)
SPARSIFY_AUTOMORPHISM_LIMIT = _env_number('SPARSIFY_AUTOMORPHISM_LIMIT', 10, int)
# Max number of sigma-graph vertices (ordered tuples) motif_weights_fast may allocate
SPARSIFY_SIGMA_VERTEX_BUDGET = _env_number('SPARSIFY_SIGMA_VERTEX_BUDGET', 6000, int)
SPARSIFY_VERIFY_LIMIT = _env_number('SPARSIFY_VERIFY_LIMIT', 20, int)
SPARSIFY_INSTANCE_CONNECTIVITY_LIMIT = _env_number('SPARSIFY_INSTANCE_CONNECTIVITY_LIMIT', 16, int)
SPARSIFY_INVARIANT_LIMIT = _env_number('SPARSIFY_INVARIANT_LIMIT', 14, int)

# Worker cap for cut scans (manage.py commands accept --threads)
SPARSIFY_THREADS = _env_number('SPARSIFY_THREADS', 1, int)

# Acceptance-size experiments in the test suite are opt-in
RUN_SLOW_TESTS = os.environ.get('RUN_SLOW_TESTS', '0').strip() in ('1', 'true', 'yes')
