"""Settings lookup shared by the library modules."""
from typing import List

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from sparsifier.errors import ConfigError


NUMERIC_SETTINGS = {
    "SPARSIFY_C1": float,
    "SPARSIFY_D": float,
    "SPARSIFY_D1": float,
    "SPARSIFY_THRESHOLD_SCALE": float,
    "SPARSIFY_SEED": int,
    "SPARSIFY_STRENGTH_CONSTANT": float,
    "SPARSIFY_EXACT_STRENGTH_LIMIT": int,
    "SPARSIFY_BRUTE_FORCE_CUT_LIMIT": int,
    "SPARSIFY_CUT_ENUMERATION_LIMIT": int,
    "SPARSIFY_ENUMERATION_LIMIT": int,
    "SPARSIFY_AUTOMORPHISM_LIMIT": int,
    "SPARSIFY_SIGMA_VERTEX_BUDGET": int,
    "SPARSIFY_VERIFY_LIMIT": int,
    "SPARSIFY_INSTANCE_CONNECTIVITY_LIMIT": int,
    "SPARSIFY_INVARIANT_LIMIT": int,
    "SPARSIFY_THREADS": int,
}


def setting(name, default):
    """Read a SPARSIFY_* value at call time; falls back when Django is not configured."""
    try:
        return getattr(settings, name, default)
    except ImproperlyConfigured:
        return default


def number_setting(name, default, cast=float):
    """Numeric setting; a malformed value raises ConfigError naming the setting."""
    value = setting(name, default)
    if value is None:
        return None
    try:
        return cast(value)
    except (TypeError, ValueError):
        kind = "an integer" if cast is int else "a number"
        raise ConfigError(f"setting {name} must be {kind}, got {value!r}")


def invalid_settings() -> List[str]:
    """Names of numeric settings whose current value does not parse."""
    bad = []
    for name, cast in NUMERIC_SETTINGS.items():
        try:
            number_setting(name, None, cast)
        except ConfigError:
            bad.append(name)
    return bad
