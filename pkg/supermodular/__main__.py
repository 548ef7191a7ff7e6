"""
Console entry point: ``supermodular <action> [operands] --manifest PATH``.

Outside a Django project the app configures a minimal settings object itself.
"""

from __future__ import absolute_import, unicode_literals

import os
import sys


def configure():
    """
    Configure Django unless a settings module is already in charge.
    """
    import django
    from django.conf import settings

    if not settings.configured and not os.environ.get('DJANGO_SETTINGS_MODULE'):
        settings.configure(
            INSTALLED_APPS=['supermodular'],
            SUPERMODULAR={},
            LOGGING={
                'version': 1,
                'disable_existing_loggers': False,
                'handlers': {'console': {'class': 'logging.StreamHandler'}},
                'loggers': {'supermodular': {'handlers': ['console'], 'level': 'WARNING'}},
            },
        )
    django.setup()


def main(argv=None):
    from django.core.management import execute_from_command_line

    configure()
    argv = sys.argv[1:] if argv is None else argv
    execute_from_command_line(['supermodular', 'supermodular'] + list(argv))


if __name__ == '__main__':
    main()
