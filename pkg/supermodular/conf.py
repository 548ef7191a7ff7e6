"""
This module contains the configuration settings of the supermodular app.

Settings live in the Django setting ``SUPERMODULAR`` (a dict).  Missing keys,
or a process where Django settings were never configured, fall back to the
defaults below.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

# Namespace
SETTINGS_NAMESPACE = 'SUPERMODULAR'

# Settings

# Seed of the property fuzzer when the command line gives none.
DEFAULT_SEED = 'DEFAULT_SEED'

# Number of random cases per property suite.  None runs each suite at the count
# it registers.
DEFAULT_CASES = 'DEFAULT_CASES'

# Threads used to evaluate independent property cases.  Results are always
# reported in case order.
WORKERS = 'WORKERS'

# Raise NeumannSeriesDivergence when a nilpotent series outlives its bound.
NEUMANN_GUARD = 'NEUMANN_GUARD'

DEFAULTS = {
    DEFAULT_SEED: 0,
    DEFAULT_CASES: None,
    WORKERS: 1,
    NEUMANN_GUARD: True,
}


def _namespace():
    try:
        from django.conf import settings
        from django.core.exceptions import ImproperlyConfigured
    except ImportError:
        return {}
    try:
        return getattr(settings, SETTINGS_NAMESPACE, {}) or {}
    except ImproperlyConfigured:
        return {}


def get(name):
    """
    Returns the configured value of one of the names above.
    """
    return _namespace().get(name, DEFAULTS[name])


def snapshot():
    """
    Returns every setting with overrides applied.
    """
    return {name: get(name) for name in DEFAULTS}
