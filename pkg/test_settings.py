"""
These settings are here to use during tests, because django requires them.

In a real-world use case the supermodular app is installed into another Django
project (or run through the ``supermodular`` console script), so these settings
will not be used.
"""

from __future__ import absolute_import, unicode_literals

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

INSTALLED_APPS = (
    'supermodular',
)

SECRET_KEY = 'insecure-secret-key'

USE_TZ = True

SUPERMODULAR = {
    'DEFAULT_SEED': 0,
    'DEFAULT_CASES': 5,
    'WORKERS': 1,
    'NEUMANN_GUARD': True,
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
        },
    },
    'loggers': {
        'supermodular': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}
