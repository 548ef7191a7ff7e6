"""
App Configuration for Supermodular
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

from django.apps import AppConfig

log = logging.getLogger(__name__)


class SupermodularAppConfig(AppConfig):
    """
    App Configuration for Supermodular
    """
    name = 'supermodular'
    verbose_name = 'Supermodular'

    def ready(self):
        from . import conf
        log.debug('supermodular ready with settings %r', conf.snapshot())
